#pragma once

#include "martinet/integrators.hpp"
#include "martinet/variational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace martinet {

/// Serial execution is the reference path; parallel dispatches independent
/// entries over OpenMP threads. Both produce identical results in input order.
enum class Execution { serial, parallel };

/// Complete elliptic integral of the first kind, K(k) = pi / (2 AGM(1, sqrt(1 - k^2))).
/// Throws DomainError unless 0 <= k < 1.
double elliptic_K(double k);

/// K expressed through the complementary modulus k' = sqrt(1 - k^2), which
/// keeps full precision as k -> 1. Throws DomainError unless 0 < k' <= 1.
double elliptic_K_complement(double kp);

/// R = t1 sqrt(pz) / (3 K(sin(theta0 / 2))).
double ratio_R(double t1, double pz, double theta0);

struct SweepRecord {
  double theta0 = 0.0;
  double eps = 0.0;  // pi - theta0
  double t1 = 0.0;
  double k = 0.0;
  double K = 0.0;
  double R = 0.0;
  double one_minus_R = 0.0;
  bool resolved = false;  // false: no conjugate point before t_end
  std::string status;     // "ok", "unresolved" or an error message
};

/// eps logarithmically spaced over [1e-4, 1e-1], `points` values, largest first.
std::vector<double> default_eps_grid(int points = 13);

/// Smallest grid time n*h covering both 9*sqrt(10/pz) and 1.1 * 3K(k)/sqrt(pz).
/// Since R <= 1, the second term bounds t1 from above for every theta0.
double sweep_t_end(double theta0, double pz, double h);

/// Flat-case Verlet conjugate-time sweep over theta0. When t_end is not
/// given, each entry uses sweep_t_end. Entries without a conjugate point (or
/// whose integration fails) are flagged, not thrown.
std::vector<SweepRecord> sweep_theta(const std::vector<double>& theta_list, double pz,
                                     const StepConfig& cfg,
                                     std::optional<double> t_end = std::nullopt,
                                     Execution exec = Execution::parallel);

struct PzInvariance {
  std::vector<std::pair<double, double>> entries;  // (pz, t1 * sqrt(pz))
  double spread = 0.0;                             // (max - min) / mean
};

/// t1 * sqrt(pz) for each pz at fixed theta0 (flat case, Verlet). Throws
/// std::runtime_error if any entry has no conjugate point.
PzInvariance pz_invariance_check(const std::vector<double>& pz_list, double theta0,
                                 const StepConfig& cfg, Execution exec = Execution::parallel);

struct DriftReport {
  double h = 0.0;
  Method method = Method::verlet;
  double max_drift = 0.0;   // max_n |H_n - H_0|
  double drift_half = 0.0;  // same over the first half of the samples
};

DriftReport drift_report(const Trajectory& traj, Method method);

/// Total angle swept by the (y, py) projection around the origin, in units
/// of full turns. One period of an orbit outside the separatrix is one turn.
double phase_turns(const Trajectory& traj);

/// y at each sign change of py, linearly interpolated between samples.
std::vector<double> py_zero_crossings(const Trajectory& traj);

struct Table1Cell {
  double beta = 0.0;
  double h = 0.0;
  Method method = Method::rk2;
  std::optional<double> t1;
  std::string error;  // empty on success
};

/// Conjugate times for both methods, beta in {0, -1e-4} and h in
/// {1e-1, 1e-2, 1e-3, 1e-4}, from the default initial data over [0, 9].
/// Order: beta-major, then h, then method (rk2, verlet).
std::vector<Table1Cell> table1(Execution exec = Execution::parallel);

}  // namespace martinet
