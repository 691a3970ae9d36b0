#pragma once

#include "martinet/integrators.hpp"
#include "martinet/martinet.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace martinet::cli {

/// One run of the reference experiment. Defaults reproduce the flat case
/// with theta0 = pi - 1e-3 and pz = 10 over [0, 9].
struct RunSpec {
  Method method = Method::verlet;
  double beta = defaults::beta;
  double h = 1e-2;
  double t_end = defaults::t_end;
  double theta0 = defaults::theta0;  // radians
  double pz = defaults::pz;
  double fp_tol = 1e-14;
  std::string output_path;  // empty or "-" means stdout

  /// Throws std::invalid_argument unless h > 0, t_end >= 0, 0 < theta0 < pi, pz > 0.
  void validate() const;
  StepConfig step_config() const;
  PhaseState initial() const { return initial_state(theta0, pz); }
};

// Each command writes its data to `out` (or to spec.output_path when set),
// diagnostics to `err`, and returns the process exit status.

/// Trajectory CSV (t,x,y,z,px,py,pz,H), one row per sample.
int cmd_integrate(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Prints the first conjugate time with 9 decimals, or "none".
int cmd_conjugate(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Conjugate-time grid for both methods, both metrics and four step sizes.
int cmd_table1(std::ostream& out, std::ostream& err);

/// Sweep CSV (theta0,eps,t1,k,K,R,one_minus_R,status) over theta0 = pi - eps.
/// Nonzero exit if any row is unresolved.
int cmd_sweep(double pz, double h, const std::vector<double>& eps_grid, const std::string& output_path,
              std::ostream& out, std::ostream& err);

}  // namespace martinet::cli
