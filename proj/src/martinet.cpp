#include "martinet/martinet.hpp"

#include <cmath>
#include <sstream>

namespace martinet {

namespace {

// 1 + beta*x, checked.
double metric_factor(const PhaseState& s, const ProblemParams& params) {
  const double d = 1.0 + params.beta * s.x;
  if (!(d > 0.0)) {
    std::ostringstream msg;
    msg << "metric singularity: 1 + beta*x = " << d << " (beta=" << params.beta
        << ", x=" << s.x << ")";
    throw DomainError(msg.str());
  }
  return d;
}

}  // namespace

bool PhaseState::finite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(z) && std::isfinite(px) &&
         std::isfinite(py) && std::isfinite(pz);
}

double hamiltonian(const PhaseState& s, const ProblemParams& params) {
  const double d = metric_factor(s, params);
  const double a = s.px + 0.5 * s.pz * s.y * s.y;
  const double v = s.py / d;
  return 0.5 * (a * a + v * v);
}

GradientPair gradients(const PhaseState& s, const ProblemParams& params) {
  const double d = metric_factor(s, params);
  const double y2 = s.y * s.y;
  const double a = s.px + 0.5 * s.pz * y2;
  const double inv_d2 = 1.0 / (d * d);

  GradientPair g;
  g.hp << a, s.py * inv_d2, 0.5 * a * y2;
  g.hq << -params.beta * s.py * s.py * inv_d2 / d, a * s.pz * s.y, 0.0;
  return g;
}

HessianBlocks hessian(const PhaseState& s, const ProblemParams& params) {
  const double d = metric_factor(s, params);
  const double b = params.beta;
  const double y = s.y;
  const double y2 = y * y;
  const double a = s.px + 0.5 * s.pz * y2;
  const double inv_d2 = 1.0 / (d * d);
  const double inv_d3 = inv_d2 / d;

  HessianBlocks h;
  h.hqq.setZero();
  h.hqq(0, 0) = 3.0 * b * b * s.py * s.py * inv_d2 * inv_d2;
  h.hqq(1, 1) = s.pz * (a + s.pz * y2);

  h.hqp.setZero();
  h.hqp(0, 1) = -2.0 * b * s.py * inv_d3;
  h.hqp(1, 0) = s.pz * y;
  h.hqp(1, 2) = y * a + 0.5 * s.pz * y2 * y;

  h.hpp.setZero();
  h.hpp(0, 0) = 1.0;
  h.hpp(0, 2) = h.hpp(2, 0) = 0.5 * y2;
  h.hpp(1, 1) = inv_d2;
  h.hpp(2, 2) = 0.25 * y2 * y2;
  return h;
}

std::optional<std::pair<double, double>> flat_stationary_points(double px, double pz) {
  if (!(px < 0.0 && pz > 0.0)) return std::nullopt;
  const double y = std::sqrt(-2.0 * px / pz);
  return std::make_pair(y, -y);
}

PhaseState initial_state(double theta0, double pz) {
  return {0.0, 0.0, 0.0, std::cos(theta0), std::sin(theta0), pz};
}

}  // namespace martinet
