#pragma once

#include "martinet/integrators.hpp"

#include <Eigen/Core>

#include <optional>
#include <tuple>
#include <utility>

namespace martinet {

/// Sensitivities of (q, p) with respect to a set of initial coordinates,
/// one column per coordinate. Rows 0..2 are q, rows 3..5 are p.
template <int Cols>
using Tangent = Eigen::Matrix<double, 6, Cols>;

/// d(q, p)/d(px0, py0, pz0).
using TangentBlock = Tangent<3>;
/// d(q, p)/d(q0, p0); used for symplecticity checks.
using FullTangent = Tangent<6>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Top block zero, bottom block identity: the derivative of (q0, p0) with
/// respect to p0.
TangentBlock initial_tangent();

/// Canonical skew matrix [[0, I], [-I, 0]].
Mat6 canonical_j();

struct StepWithJacobian {
  PhaseState next;
  Mat6 jacobian;  // exact derivative of the discrete step map at the input state
};

/// One step of the chosen method together with its 6x6 Jacobian, obtained by
/// the chain rule through every stage. For implicit Verlet stages the
/// linearised relations are solved at the converged point, so the result
/// does not depend on the iteration count.
StepWithJacobian step_with_jacobian(Method method, const PhaseState& s, const ProblemParams& params,
                                    double h, const StepConfig& cfg);

template <int Cols>
std::pair<PhaseState, Tangent<Cols>> step_tangent(const PhaseState& s, const Tangent<Cols>& tangent,
                                                  const ProblemParams& params, double h,
                                                  const StepConfig& cfg, Method method) {
  const StepWithJacobian sj = step_with_jacobian(method, s, params, h, cfg);
  return {sj.next, (sj.jacobian * tangent).eval()};
}

/// det(dq/dp0), the determinant of the top 3x3 block.
double det_dq_dp0(const TangentBlock& tangent);

/// det(dq/dp0) divided by the product of the row norms of dq/dp0; lies in
/// [-1, 1] and measures how far the block is from singular. 0 for a zero row.
double hadamard_ratio(const TangentBlock& tangent);

/// Leading samples with |hadamard_ratio| at or below this value are treated
/// as part of the singular start at t = 0. After one RK2 step from q0 = 0 the
/// block is exactly singular in the flat case, so its sign is rounding noise.
inline constexpr double kDegenerateStartRatio = 1e-12;

struct ConjugateEvent {
  double t_lo = 0.0;
  double t_hi = 0.0;
  double det_lo = 0.0;
  double det_hi = 0.0;
  double t1 = 0.0;
};

/// Integrates state and tangent from the canonical initial tangent and
/// returns the first sign change of det(dq_n/dp0), with t1 found by linear
/// interpolation of the two bracketing samples. Scanning starts at the first
/// sample past the degenerate start (see kDegenerateStartRatio). A sample
/// that is exactly zero is reported as t1 = t_n. Returns nullopt if no sign
/// change occurs up to t_end. Integration failures surface as
/// IntegrationError.
std::optional<ConjugateEvent> find_first_conjugate(const PhaseState& state0,
                                                   const ProblemParams& params,
                                                   const StepConfig& cfg, double t_end,
                                                   Method method);

}  // namespace martinet
