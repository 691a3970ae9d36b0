#include "martinet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace martinet {

namespace {

double agm(double a, double g) {
  // Quadratic convergence: ~5 iterations for k' ~ 1e-4, never more than ~10.
  for (int it = 0; it < 64 && std::abs(a - g) > 2.0 * std::numeric_limits<double>::epsilon() * a;
       ++it) {
    const double next = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = next;
  }
  return 0.5 * (a + g);
}

// Runs `body(i)` for i in [0, n). Bodies must not throw.
template <typename Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace

double elliptic_K_complement(double kp) {
  if (!(kp > 0.0 && kp <= 1.0)) throw DomainError("elliptic_K: complementary modulus must be in (0, 1]");
  return std::numbers::pi / (2.0 * agm(1.0, kp));
}

double elliptic_K(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw DomainError("elliptic_K: modulus must satisfy 0 <= k < 1");
  if (k == 0.0) return std::numbers::pi / 2.0;
  return elliptic_K_complement(std::sqrt((1.0 - k) * (1.0 + k)));
}

double ratio_R(double t1, double pz, double theta0) {
  if (!(t1 > 0.0)) throw DomainError("ratio_R: t1 must be > 0");
  if (!(pz > 0.0)) throw DomainError("ratio_R: pz must be > 0");
  if (!(theta0 > 0.0 && theta0 < std::numbers::pi)) throw DomainError("ratio_R: theta0 must be in (0, pi)");
  // k' = cos(theta0 / 2) directly; 1 - sin^2 would cancel near theta0 = pi.
  return t1 * std::sqrt(pz) / (3.0 * elliptic_K_complement(std::cos(0.5 * theta0)));
}

std::vector<double> default_eps_grid(int points) {
  if (points < 1) throw std::invalid_argument("eps grid needs at least one point");
  std::vector<double> eps(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double e = points == 1 ? -1.0 : -1.0 - 3.0 * i / (points - 1);
    eps[static_cast<std::size_t>(i)] = std::pow(10.0, e);
  }
  return eps;
}

double sweep_t_end(double theta0, double pz, double h) {
  const double base = 9.0 * std::sqrt(10.0 / pz);
  const double bound = 1.1 * 3.0 * elliptic_K_complement(std::cos(0.5 * theta0)) / std::sqrt(pz);
  const double t = std::max(base, bound);
  return std::ceil(t / h - 1e-9) * h;
}

std::vector<SweepRecord> sweep_theta(const std::vector<double>& theta_list, double pz,
                                     const StepConfig& cfg, std::optional<double> t_end,
                                     Execution exec) {
  cfg.validate();
  std::vector<SweepRecord> out(theta_list.size());
  for_each_index(theta_list.size(), exec, [&](std::size_t i) {
    SweepRecord& rec = out[i];
    rec.theta0 = theta_list[i];
    rec.eps = std::numbers::pi - rec.theta0;
    try {
      if (!(rec.theta0 > 0.0 && rec.theta0 < std::numbers::pi))
        throw DomainError("theta0 must be in (0, pi)");
      rec.k = std::sin(0.5 * rec.theta0);
      rec.K = elliptic_K_complement(std::cos(0.5 * rec.theta0));
      const double horizon = t_end ? *t_end : sweep_t_end(rec.theta0, pz, cfg.h);
      const auto ev =
          find_first_conjugate(initial_state(rec.theta0, pz), ProblemParams{0.0}, cfg, horizon, Method::verlet);
      if (!ev) {
        rec.status = "unresolved";
        return;
      }
      rec.t1 = ev->t1;
      rec.R = ratio_R(rec.t1, pz, rec.theta0);
      rec.one_minus_R = 1.0 - rec.R;
      rec.resolved = true;
      rec.status = "ok";
    } catch (const std::exception& e) {
      rec.status = e.what();
    }
  });
  return out;
}

PzInvariance pz_invariance_check(const std::vector<double>& pz_list, double theta0,
                                 const StepConfig& cfg, Execution exec) {
  cfg.validate();
  std::vector<std::optional<double>> t1(pz_list.size());
  std::vector<std::string> errors(pz_list.size());
  for_each_index(pz_list.size(), exec, [&](std::size_t i) {
    try {
      const double pz = pz_list[i];
      if (!(pz > 0.0)) throw DomainError("pz must be > 0");
      const auto ev = find_first_conjugate(initial_state(theta0, pz), ProblemParams{0.0}, cfg,
                                           sweep_t_end(theta0, pz, cfg.h), Method::verlet);
      if (ev) t1[i] = ev->t1;
      else errors[i] = "no conjugate point";
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  PzInvariance res;
  for (std::size_t i = 0; i < pz_list.size(); ++i) {
    if (!t1[i]) throw std::runtime_error("pz=" + std::to_string(pz_list[i]) + ": " + errors[i]);
    res.entries.emplace_back(pz_list[i], *t1[i] * std::sqrt(pz_list[i]));
  }
  if (!res.entries.empty()) {
    auto [lo, hi] = std::minmax_element(res.entries.begin(), res.entries.end(),
                                        [](const auto& a, const auto& b) { return a.second < b.second; });
    const double mean = std::accumulate(res.entries.begin(), res.entries.end(), 0.0,
                                        [](double acc, const auto& e) { return acc + e.second; }) /
                        static_cast<double>(res.entries.size());
    res.spread = (hi->second - lo->second) / mean;
  }
  return res;
}

DriftReport drift_report(const Trajectory& traj, Method method) {
  if (traj.energies.empty()) throw std::invalid_argument("drift_report: empty trajectory");
  DriftReport rep;
  rep.h = traj.step_size();
  rep.method = method;
  const double h0 = traj.energies.front();
  const std::size_t half = (traj.energies.size() - 1) / 2;
  for (std::size_t n = 0; n < traj.energies.size(); ++n) {
    const double d = std::abs(traj.energies[n] - h0);
    rep.max_drift = std::max(rep.max_drift, d);
    if (n <= half) rep.drift_half = std::max(rep.drift_half, d);
  }
  return rep;
}

double phase_turns(const Trajectory& traj) {
  double total = 0.0;
  for (std::size_t n = 1; n < traj.states.size(); ++n) {
    const auto& a = traj.states[n - 1];
    const auto& b = traj.states[n];
    // Signed angle between consecutive (y, py) position vectors.
    const double cross = a.y * b.py - a.py * b.y;
    const double dot = a.y * b.y + a.py * b.py;
    total += std::atan2(cross, dot);
  }
  return std::abs(total) / (2.0 * std::numbers::pi);
}

std::vector<double> py_zero_crossings(const Trajectory& traj) {
  std::vector<double> ys;
  for (std::size_t n = 1; n < traj.states.size(); ++n) {
    const auto& a = traj.states[n - 1];
    const auto& b = traj.states[n];
    if (a.py * b.py < 0.0 || (b.py == 0.0 && a.py != 0.0)) {
      const double s = a.py / (a.py - b.py);
      ys.push_back(a.y + s * (b.y - a.y));
    }
  }
  return ys;
}

std::vector<Table1Cell> table1(Execution exec) {
  std::vector<Table1Cell> cells;
  for (double beta : {defaults::beta, defaults::perturbed_beta})
    for (double h : {1e-1, 1e-2, 1e-3, 1e-4})
      for (Method m : {Method::rk2, Method::verlet}) cells.push_back({beta, h, m, std::nullopt, {}});

  const PhaseState y0 = initial_state(defaults::theta0, defaults::pz);
  for_each_index(cells.size(), exec, [&](std::size_t i) {
    Table1Cell& c = cells[i];
    try {
      StepConfig cfg;
      cfg.h = c.h;
      const auto ev = find_first_conjugate(y0, ProblemParams{c.beta}, cfg, defaults::t_end, c.method);
      if (ev) c.t1 = ev->t1;
      else c.error = "no conjugate point before t_end";
    } catch (const std::exception& e) {
      c.error = e.what();
    }
  });
  return cells;
}

}  // namespace martinet
