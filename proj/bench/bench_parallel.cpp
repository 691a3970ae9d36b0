// Serial reference vs OpenMP dispatch for the independent-task kernels.
// Both paths run identical per-task code; only the loop scheduling differs.

#include "martinet/analysis.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

#include <numbers>

using namespace martinet;

namespace {

std::vector<double> sweep_thetas() {
  std::vector<double> out;
  for (double eps : default_eps_grid(8)) out.push_back(std::numbers::pi - eps);
  return out;
}

void BM_Sweep(benchmark::State& state, Execution exec) {
  StepConfig cfg;
  cfg.h = 1e-3;
  const auto thetas = sweep_thetas();
  for (auto _ : state) benchmark::DoNotOptimize(sweep_theta(thetas, defaults::pz, cfg, std::nullopt, exec));
  state.counters["threads"] = exec == Execution::parallel ? omp_get_max_threads() : 1;
}

void BM_Table1(benchmark::State& state, Execution exec) {
  for (auto _ : state) benchmark::DoNotOptimize(table1(exec));
  state.counters["threads"] = exec == Execution::parallel ? omp_get_max_threads() : 1;
}

}  // namespace

BENCHMARK_CAPTURE(BM_Sweep, serial, Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sweep, parallel, Execution::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Table1, serial, Execution::serial)->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK_CAPTURE(BM_Table1, parallel, Execution::parallel)->Unit(benchmark::kMillisecond)->Iterations(2);

BENCHMARK_MAIN();
