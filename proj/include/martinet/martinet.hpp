#pragma once

#include <Eigen/Core>

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace martinet {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Raised when the metric denominator 1 + beta*x is no longer positive, or
/// when an argument falls outside the domain of a special function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Point (q, p) of the geodesic Hamiltonian system; q = (x, y, z) is the
/// state and p = (px, py, pz) its adjoint.
struct PhaseState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double px = 0.0;
  double py = 0.0;
  double pz = 0.0;

  Vec3 q() const { return {x, y, z}; }
  Vec3 p() const { return {px, py, pz}; }

  static PhaseState from(const Vec3& q, const Vec3& p) {
    return {q[0], q[1], q[2], p[0], p[1], p[2]};
  }

  bool finite() const;

  friend bool operator==(const PhaseState&, const PhaseState&) = default;
};

/// Metric g = dx^2 + (1 + beta*x)^2 dy^2; beta = 0 is the flat Martinet case.
struct ProblemParams {
  double beta = 0.0;

  bool flat() const { return beta == 0.0; }
};

struct GradientPair {
  Vec3 hq;  // dH/dq; hq[2] is always 0
  Vec3 hp;  // dH/dp
};

/// Second partials of H. hqp(i, j) = d^2 H / dq_i dp_j, so the p-q block is
/// its transpose.
struct HessianBlocks {
  Mat3 hqq;
  Mat3 hqp;
  Mat3 hpp;
};

/// H(q, p) = ((px + pz y^2/2)^2 + py^2 / (1 + beta x)^2) / 2.
double hamiltonian(const PhaseState& s, const ProblemParams& params);

GradientPair gradients(const PhaseState& s, const ProblemParams& params);

HessianBlocks hessian(const PhaseState& s, const ProblemParams& params);

/// y = +-sqrt(-2 px / pz): the two minima of the reduced flat-case (y, py)
/// Hamiltonian. Only exist for px < 0 < pz; the origin is then a saddle.
std::optional<std::pair<double, double>> flat_stationary_points(double px, double pz);

/// Reference experiment: start close to the abnormal direction theta0 = pi.
namespace defaults {
inline constexpr double theta0 = std::numbers::pi - 1e-3;
inline constexpr double pz = 10.0;
inline constexpr double beta = 0.0;
inline constexpr double perturbed_beta = -1e-4;
inline constexpr double t_end = 9.0;
}  // namespace defaults

/// Initial data on the unit momentum circle at the origin:
/// q = 0, px = cos(theta0), py = sin(theta0), pz given.
PhaseState initial_state(double theta0, double pz);

}  // namespace martinet
