#include "martinet/integrators.hpp"

#include <cmath>
#include <sstream>

namespace martinet {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::rk2:
      return "rk2";
    case Method::verlet:
      return "verlet";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "rk2") return Method::rk2;
  if (name == "verlet") return Method::verlet;
  throw std::invalid_argument("unknown method '" + std::string(name) + "' (expected rk2|verlet)");
}

IntegrationError::IntegrationError(std::size_t step, Cause cause, const std::string& what)
    : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step), cause_(cause) {}

void StepConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step size h must be > 0");
  if (!(fp_tol > 0.0)) throw std::invalid_argument("fp_tol must be > 0");
  if (fp_max_iters < 1) throw std::invalid_argument("fp_max_iters must be >= 1");
}

std::size_t step_count(double t_end, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step size h must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be >= 0");
  const double n = std::round(t_end / h);
  if (std::abs(n * h - t_end) > 1e-12 * t_end) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "t_end=" << t_end << " is not an integer multiple of h=" << h;
    throw std::invalid_argument(msg.str());
  }
  return static_cast<std::size_t>(n);
}

PhaseState rk2_step(const PhaseState& s, const ProblemParams& params, double h) {
  const GradientPair g0 = gradients(s, params);
  const PhaseState mid = PhaseState::from(s.q() + 0.5 * h * g0.hp, s.p() - 0.5 * h * g0.hq);
  const GradientPair g1 = gradients(mid, params);
  return PhaseState::from(s.q() + h * g1.hp, s.p() - h * g1.hq);
}

namespace {

template <typename Map>
Vec3 fixed_point(const Vec3& guess, Map&& map, const StepConfig& cfg, const char* what) {
  Vec3 cur = guess;
  double res = 0.0;
  for (int it = 0; it < cfg.fp_max_iters; ++it) {
    const Vec3 next = map(cur);
    res = (next - cur).cwiseAbs().maxCoeff();
    cur = next;
    if (res <= cfg.fp_tol) return cur;
  }
  std::ostringstream msg;
  msg << "fixed-point iteration for " << what << " did not converge in " << cfg.fp_max_iters
      << " iterations (residual " << res << ")";
  throw ConvergenceError(msg.str());
}

VerletStages verlet_flat(const PhaseState& s, double h) {
  const double hh = 0.5 * h;
  const double pz = s.pz;
  const double px = s.px;  // dH/dx = 0, so px is unchanged in both half steps

  const double a0 = px + 0.5 * pz * s.y * s.y;
  const double py_half = s.py - hh * a0 * pz * s.y;
  const double y1 = s.y + h * py_half;
  const double a1 = px + 0.5 * pz * y1 * y1;
  const double x1 = s.x + hh * (a0 + a1);
  const double z1 = s.z + hh * (0.5 * a0 * s.y * s.y + 0.5 * a1 * y1 * y1);
  const double py1 = py_half - hh * a1 * pz * y1;

  VerletStages st;
  st.p_half << px, py_half, pz;
  st.q1 << x1, y1, z1;
  st.p1 << px, py1, pz;
  return st;
}

}  // namespace

VerletStages verlet_stages(const PhaseState& s, const ProblemParams& params, double h,
                           const StepConfig& cfg) {
  if (params.flat()) return verlet_flat(s, h);

  const double hh = 0.5 * h;
  const Vec3 q0 = s.q();
  const Vec3 p0 = s.p();

  VerletStages st;
  st.p_half = fixed_point(
      p0, [&](const Vec3& ph) { return Vec3(p0 - hh * gradients(PhaseState::from(q0, ph), params).hq); },
      cfg, "p_{n+1/2}");

  const Vec3 hp0 = gradients(PhaseState::from(q0, st.p_half), params).hp;
  st.q1 = fixed_point(
      q0,
      [&](const Vec3& q1) {
        return Vec3(q0 + hh * (hp0 + gradients(PhaseState::from(q1, st.p_half), params).hp));
      },
      cfg, "q_{n+1}");

  st.p1 = st.p_half - hh * gradients(PhaseState::from(st.q1, st.p_half), params).hq;
  return st;
}

PhaseState verlet_step(const PhaseState& s, const ProblemParams& params, double h,
                       const StepConfig& cfg) {
  const VerletStages st = verlet_stages(s, params, h, cfg);
  return PhaseState::from(st.q1, st.p1);
}

PhaseState rk2_step(const PhaseState& s, const ProblemParams& params, const StepConfig& cfg) {
  return rk2_step(s, params, cfg.h);
}

PhaseState verlet_step(const PhaseState& s, const ProblemParams& params, const StepConfig& cfg) {
  return verlet_step(s, params, cfg.h, cfg);
}

PhaseState step(Method method, const PhaseState& s, const ProblemParams& params, double h,
                const StepConfig& cfg) {
  return method == Method::rk2 ? rk2_step(s, params, h) : verlet_step(s, params, h, cfg);
}

Trajectory integrate(const PhaseState& state0, const ProblemParams& params, const StepConfig& cfg,
                     double t_end, Method method) {
  cfg.validate();
  const std::size_t n_steps = step_count(t_end, cfg.h);

  Trajectory traj;
  traj.times.reserve(n_steps + 1);
  traj.states.reserve(n_steps + 1);
  traj.energies.reserve(n_steps + 1);

  traj.times.push_back(0.0);
  traj.states.push_back(state0);
  traj.energies.push_back(hamiltonian(state0, params));

  PhaseState cur = state0;
  for (std::size_t n = 0; n < n_steps; ++n) {
    try {
      cur = step(method, cur, params, cfg.h, cfg);
      traj.energies.push_back(hamiltonian(cur, params));
    } catch (const DomainError& e) {
      throw IntegrationError(n, IntegrationError::Cause::domain, e.what());
    } catch (const ConvergenceError& e) {
      throw IntegrationError(n, IntegrationError::Cause::convergence, e.what());
    }
    traj.times.push_back(static_cast<double>(n + 1) * cfg.h);
    traj.states.push_back(cur);
  }
  return traj;
}

}  // namespace martinet
