#include "martinet/variational.hpp"

#include <Eigen/LU>

#include <cmath>

namespace martinet {

namespace {

using Mat36 = Eigen::Matrix<double, 3, 6>;

// Jacobian of the vector field f = (H_p, -H_q).
Mat6 field_jacobian(const HessianBlocks& hs) {
  Mat6 m;
  m.topLeftCorner<3, 3>() = hs.hqp.transpose();
  m.topRightCorner<3, 3>() = hs.hpp;
  m.bottomLeftCorner<3, 3>() = -hs.hqq;
  m.bottomRightCorner<3, 3>() = -hs.hqp;
  return m;
}

StepWithJacobian rk2_with_jacobian(const PhaseState& s, const ProblemParams& params, double h) {
  const GradientPair g0 = gradients(s, params);
  const PhaseState mid = PhaseState::from(s.q() + 0.5 * h * g0.hp, s.p() - 0.5 * h * g0.hq);
  const GradientPair g1 = gradients(mid, params);

  const Mat6 id = Mat6::Identity();
  const Mat6 d_mid = id + 0.5 * h * field_jacobian(hessian(s, params));

  StepWithJacobian out;
  out.next = PhaseState::from(s.q() + h * g1.hp, s.p() - h * g1.hq);
  out.jacobian = id + h * field_jacobian(hessian(mid, params)) * d_mid;
  return out;
}

StepWithJacobian verlet_with_jacobian(const PhaseState& s, const ProblemParams& params, double h,
                                      const StepConfig& cfg) {
  const VerletStages st = verlet_stages(s, params, h, cfg);
  const double hh = 0.5 * h;
  const Mat3 id3 = Mat3::Identity();

  const HessianBlocks h0 = hessian(PhaseState::from(s.q(), st.p_half), params);
  const HessianBlocks h1 = hessian(PhaseState::from(st.q1, st.p_half), params);

  // p_half = p0 - hh * H_q(q0, p_half)
  Mat36 rhs_p;
  rhs_p << -hh * h0.hqq, id3;
  const Mat36 dp_half = (id3 + hh * h0.hqp).partialPivLu().solve(rhs_p);

  // q1 = q0 + hh * (H_p(q0, p_half) + H_p(q1, p_half))
  Mat36 rhs_q;
  rhs_q << id3 + hh * h0.hqp.transpose(), Mat3::Zero();
  rhs_q += hh * (h0.hpp + h1.hpp) * dp_half;
  const Mat36 dq1 = (id3 - hh * h1.hqp.transpose()).partialPivLu().solve(rhs_q);

  // p1 = p_half - hh * H_q(q1, p_half)
  const Mat36 dp1 = dp_half - hh * (h1.hqq * dq1 + h1.hqp * dp_half);

  StepWithJacobian out;
  out.next = PhaseState::from(st.q1, st.p1);
  out.jacobian.topRows<3>() = dq1;
  out.jacobian.bottomRows<3>() = dp1;
  return out;
}

}  // namespace

TangentBlock initial_tangent() {
  TangentBlock t = TangentBlock::Zero();
  t.bottomRows<3>().setIdentity();
  return t;
}

Mat6 canonical_j() {
  Mat6 j = Mat6::Zero();
  j.topRightCorner<3, 3>().setIdentity();
  j.bottomLeftCorner<3, 3>() = -Mat3::Identity();
  return j;
}

StepWithJacobian step_with_jacobian(Method method, const PhaseState& s, const ProblemParams& params,
                                    double h, const StepConfig& cfg) {
  return method == Method::rk2 ? rk2_with_jacobian(s, params, h)
                               : verlet_with_jacobian(s, params, h, cfg);
}

double det_dq_dp0(const TangentBlock& tangent) {
  const Mat3 top = tangent.topRows<3>();
  return top.determinant();
}

double hadamard_ratio(const TangentBlock& tangent) {
  const Mat3 top = tangent.topRows<3>();
  const double scale = top.row(0).norm() * top.row(1).norm() * top.row(2).norm();
  return scale > 0.0 ? top.determinant() / scale : 0.0;
}

std::optional<ConjugateEvent> find_first_conjugate(const PhaseState& state0,
                                                   const ProblemParams& params,
                                                   const StepConfig& cfg, double t_end,
                                                   Method method) {
  cfg.validate();
  const std::size_t n_steps = step_count(t_end, cfg.h);
  const double h = cfg.h;

  PhaseState state = state0;
  TangentBlock tangent = initial_tangent();
  bool scanning = false;
  double det_prev = 0.0;

  for (std::size_t n = 0; n < n_steps; ++n) {
    try {
      std::tie(state, tangent) = step_tangent(state, tangent, params, h, cfg, method);
    } catch (const DomainError& e) {
      throw IntegrationError(n, IntegrationError::Cause::domain, e.what());
    } catch (const ConvergenceError& e) {
      throw IntegrationError(n, IntegrationError::Cause::convergence, e.what());
    }
    const double det = det_dq_dp0(tangent);
    const double t_prev = static_cast<double>(n) * h;
    const double t_cur = static_cast<double>(n + 1) * h;

    // dq/dp0 starts singular; samples that are still numerically singular
    // carry no sign information and never bracket.
    if (!scanning) {
      if (std::abs(hadamard_ratio(tangent)) > kDegenerateStartRatio) {
        scanning = true;
        det_prev = det;
      }
      continue;
    }
    if (det == 0.0) return ConjugateEvent{t_prev, t_cur, det_prev, 0.0, t_cur};
    if (det_prev * det < 0.0) {
      return ConjugateEvent{t_prev, t_cur, det_prev, det, t_prev + h * det_prev / (det_prev - det)};
    }
    det_prev = det;
  }
  return std::nullopt;
}

}  // namespace martinet
