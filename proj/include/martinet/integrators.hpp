#pragma once

#include "martinet/martinet.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace martinet {

enum class Method { rk2, verlet };

std::string_view to_string(Method m);
/// Accepts "rk2" or "verlet"; throws std::invalid_argument otherwise.
Method parse_method(std::string_view name);

/// Fixed-point iteration did not reach fp_tol within fp_max_iters.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A step of `integrate` failed. `step()` is the index n of the step
/// n -> n+1 that threw.
class IntegrationError : public std::runtime_error {
 public:
  enum class Cause { domain, convergence };

  IntegrationError(std::size_t step, Cause cause, const std::string& what);

  std::size_t step() const { return step_; }
  Cause cause() const { return cause_; }

 private:
  std::size_t step_;
  Cause cause_;
};

struct StepConfig {
  double h = 1e-2;
  double fp_tol = 1e-14;
  int fp_max_iters = 50;

  /// Throws std::invalid_argument unless h > 0, fp_tol > 0, fp_max_iters >= 1.
  void validate() const;
};

/// Samples t_n = n*h, n = 0..N, with the energy recorded at every sample.
struct Trajectory {
  std::vector<double> times;
  std::vector<PhaseState> states;
  std::vector<double> energies;

  std::size_t size() const { return states.size(); }
  double step_size() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

/// Number of steps N = round(t_end/h). Throws std::invalid_argument if
/// t_end < 0 or |N*h - t_end| > 1e-12 * t_end.
std::size_t step_count(double t_end, double h);

// The single-step maps accept any finite h, including h <= 0 (used for
// backward stepping). cfg.h is ignored; the step size is passed explicitly.

/// Explicit two-stage midpoint scheme.
PhaseState rk2_step(const PhaseState& s, const ProblemParams& params, double h);

/// Intermediate values of one Stormer-Verlet step.
struct VerletStages {
  Vec3 p_half;
  Vec3 q1;
  Vec3 p1;
};

/// Stormer-Verlet (implicit midpoint-in-p, trapezoidal-in-q form). In the
/// flat case the components are computed explicitly in the order
/// px, pz, py_half, y, x, z, py; otherwise the two implicit relations are
/// solved by fixed-point iteration to max-norm residual <= cfg.fp_tol.
VerletStages verlet_stages(const PhaseState& s, const ProblemParams& params, double h,
                           const StepConfig& cfg);

PhaseState verlet_step(const PhaseState& s, const ProblemParams& params, double h,
                       const StepConfig& cfg);

PhaseState rk2_step(const PhaseState& s, const ProblemParams& params, const StepConfig& cfg);
PhaseState verlet_step(const PhaseState& s, const ProblemParams& params, const StepConfig& cfg);

PhaseState step(Method method, const PhaseState& s, const ProblemParams& params, double h,
                const StepConfig& cfg);

Trajectory integrate(const PhaseState& state0, const ProblemParams& params, const StepConfig& cfg,
                     double t_end, Method method);

}  // namespace martinet
