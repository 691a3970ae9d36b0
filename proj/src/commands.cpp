#include "martinet/commands.hpp"

#include "martinet/analysis.hpp"
#include "martinet/csv.hpp"
#include "martinet/variational.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace martinet::cli {

namespace {

// Converged conjugate times for the two metrics (theta0 = pi - 1e-3, pz = 10).
constexpr double kReferenceFlat = 8.416409;
constexpr double kReferencePerturbed = 4.876997;

// Runs `write` against spec.output_path, or `out` when no path is given.
int with_output(const std::string& path, std::ostream& out, std::ostream& err,
                const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(out);
    return out ? 0 : 1;
  }
  std::ofstream file(path);
  if (!file) {
    err << "error: cannot open '" << path << "' for writing\n";
    return 1;
  }
  write(file);
  file.close();
  if (!file) {
    err << "error: failed writing '" << path << "'\n";
    return 1;
  }
  return 0;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

void RunSpec::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("--h must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("--t-end must be >= 0");
  if (!(theta0 > 0.0 && theta0 < std::numbers::pi)) throw std::invalid_argument("--theta0 must be in (0, pi)");
  if (!(pz > 0.0) || !std::isfinite(pz)) throw std::invalid_argument("--pz must be > 0");
  if (!std::isfinite(beta)) throw std::invalid_argument("--beta must be finite");
  if (!(fp_tol > 0.0)) throw std::invalid_argument("--fp-tol must be > 0");
}

StepConfig RunSpec::step_config() const {
  StepConfig cfg;
  cfg.h = h;
  cfg.fp_tol = fp_tol;
  return cfg;
}

int cmd_integrate(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  Trajectory traj;
  try {
    spec.validate();
    traj = integrate(spec.initial(), ProblemParams{spec.beta}, spec.step_config(), spec.t_end, spec.method);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return with_output(spec.output_path, out, err, [&](std::ostream& os) { csv::write_trajectory(os, traj); });
}

int cmd_conjugate(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    spec.validate();
    if (!(spec.t_end > 0.0)) throw std::invalid_argument("--t-end must be > 0");
    const auto ev = find_first_conjugate(spec.initial(), ProblemParams{spec.beta}, spec.step_config(),
                                         spec.t_end, spec.method);
    return with_output(spec.output_path, out, err, [&](std::ostream& os) {
      os << (ev ? fixed(ev->t1, 9) : std::string("none")) << '\n';
    });
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_table1(std::ostream& out, std::ostream& err) {
  const std::vector<Table1Cell> cells = table1(Execution::parallel);

  bool failed = false;
  auto cell_text = [&](const Table1Cell& c) {
    if (c.t1) return fixed(*c.t1, 6);
    failed = true;
    err << "error: beta=" << c.beta << " h=" << c.h << " " << to_string(c.method) << ": " << c.error << '\n';
    return std::string("ERROR");
  };

  char line[128];
  out << "First conjugate time t1, theta0 = pi - 1e-3, pz = 10, t in [0, 9]\n\n";
  std::snprintf(line, sizeof line, "%-8s  %-22s  %-22s\n", "", "flat (beta = 0)", "perturbed (beta = -1e-4)");
  out << line;
  std::snprintf(line, sizeof line, "%-8s  %-10s  %-10s  %-10s  %-10s\n", "h", "RK2", "Verlet", "RK2", "Verlet");
  out << line;
  // cells are ordered beta-major, then h, then (rk2, verlet)
  for (std::size_t row = 0; row < 4; ++row) {
    const Table1Cell& f_rk2 = cells[2 * row];
    const Table1Cell& f_vv = cells[2 * row + 1];
    const Table1Cell& p_rk2 = cells[8 + 2 * row];
    const Table1Cell& p_vv = cells[8 + 2 * row + 1];
    char h_text[16];
    std::snprintf(h_text, sizeof h_text, "%.0e", f_rk2.h);
    std::snprintf(line, sizeof line, "%-8s  %-10s  %-10s  %-10s  %-10s\n", h_text, cell_text(f_rk2).c_str(),
                  cell_text(f_vv).c_str(), cell_text(p_rk2).c_str(), cell_text(p_vv).c_str());
    out << line;
  }
  out << "\nreference: t1 ~ " << fixed(kReferenceFlat, 6) << " (flat), t1 ~ " << fixed(kReferencePerturbed, 6)
      << " (perturbed)\n";
  return failed ? 1 : 0;
}

int cmd_sweep(double pz, double h, const std::vector<double>& eps_grid, const std::string& output_path,
              std::ostream& out, std::ostream& err) {
  std::vector<SweepRecord> records;
  try {
    if (!(pz > 0.0)) throw std::invalid_argument("--pz must be > 0");
    if (eps_grid.empty()) throw std::invalid_argument("--eps-grid must not be empty");
    std::vector<double> thetas;
    for (double eps : eps_grid) {
      if (!(eps > 0.0 && eps < std::numbers::pi)) throw std::invalid_argument("eps values must be in (0, pi)");
      thetas.push_back(std::numbers::pi - eps);
    }
    StepConfig cfg;
    cfg.h = h;
    records = sweep_theta(thetas, pz, cfg, std::nullopt, Execution::parallel);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  const int io = with_output(output_path, out, err, [&](std::ostream& os) { csv::write_sweep(os, records); });
  int unresolved = 0;
  for (const SweepRecord& r : records) {
    if (!r.resolved) {
      ++unresolved;
      err << "warning: eps=" << r.eps << ": " << r.status << '\n';
    }
  }
  return io != 0 || unresolved > 0 ? 1 : 0;
}

}  // namespace martinet::cli
