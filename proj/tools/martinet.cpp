// Command-line runner for the Martinet geodesic experiments.
//
//   martinet integrate --method verlet --h 0.05 --out traj.csv
//   martinet conjugate --method rk2 --beta -1e-4 --h 1e-3
//   martinet table1
//   martinet sweep --h 1e-4 --eps-grid 1e-1,1e-2,1e-3 --out sweep.csv

#include "martinet/analysis.hpp"
#include "martinet/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

void add_run_options(CLI::App& cmd, martinet::cli::RunSpec& spec) {
  cmd.add_option_function<std::string>(
         "--method", [&spec](const std::string& name) { spec.method = martinet::parse_method(name); },
         "Integrator: rk2 | verlet (default: verlet)")
      ->check(CLI::IsMember({"rk2", "verlet"}, CLI::ignore_case));
  cmd.add_option("--beta", spec.beta, "Metric perturbation (0 = flat case)")->capture_default_str();
  cmd.add_option("--h", spec.h, "Step size")->capture_default_str();
  cmd.add_option("--t-end", spec.t_end, "Final time, an integer multiple of h")->capture_default_str();
  cmd.add_option("--theta0", spec.theta0, "Initial momentum angle in radians")->capture_default_str();
  cmd.add_option("--pz", spec.pz, "Initial pz")->capture_default_str();
  cmd.add_option("--fp-tol", spec.fp_tol, "Fixed-point tolerance for implicit Verlet stages")
      ->capture_default_str();
  cmd.add_option("--out", spec.output_path, "Output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symplectic vs non-symplectic integration of Martinet sub-Riemannian geodesics"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  martinet::cli::RunSpec integrate_spec;
  auto* integrate = app.add_subcommand("integrate", "Write a trajectory as CSV");
  add_run_options(*integrate, integrate_spec);

  martinet::cli::RunSpec conjugate_spec;
  auto* conjugate = app.add_subcommand("conjugate", "Print the first conjugate time");
  add_run_options(*conjugate, conjugate_spec);

  app.add_subcommand("table1", "Conjugate times for both methods, both metrics and h = 1e-1..1e-4");

  double sweep_pz = martinet::defaults::pz;
  double sweep_h = 1e-4;
  std::vector<double> eps_grid = martinet::default_eps_grid();
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Ratio R over theta0 = pi - eps (flat case, Verlet)");
  sweep->add_option("--pz", sweep_pz, "Initial pz")->capture_default_str();
  sweep->add_option("--h", sweep_h, "Step size")->capture_default_str();
  sweep->add_option("--eps-grid", eps_grid, "Comma-separated eps values (default: 13 log-spaced in [1e-4, 1e-1])")
      ->delimiter(',');
  sweep->add_option("--out", sweep_out, "Output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  if (integrate->parsed()) return martinet::cli::cmd_integrate(integrate_spec, std::cout, std::cerr);
  if (conjugate->parsed()) return martinet::cli::cmd_conjugate(conjugate_spec, std::cout, std::cerr);
  if (app.got_subcommand("table1")) return martinet::cli::cmd_table1(std::cout, std::cerr);
  if (sweep->parsed()) return martinet::cli::cmd_sweep(sweep_pz, sweep_h, eps_grid, sweep_out, std::cout, std::cerr);
  return 1;
}
