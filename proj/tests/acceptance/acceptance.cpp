// Acceptance suite: one PASS/FAIL line per check, nonzero exit if any fails.

#include "martinet/analysis.hpp"
#include "martinet/commands.hpp"
#include "martinet/variational.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>

using namespace martinet;

namespace {

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[192];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const PhaseState kReference = initial_state(defaults::theta0, defaults::pz);

double state_error(const PhaseState& a, const PhaseState& b) {
  return std::max((a.q() - b.q()).cwiseAbs().maxCoeff(), (a.p() - b.p()).cwiseAbs().maxCoeff());
}

double tolerance_for(double h) {
  if (h >= 1e-2) return 1e-3;
  if (h >= 1e-3) return 1e-4;
  return 1e-5;
}

// Expected grid, in the same order as table1(): beta-major, then h, then (rk2, verlet).
constexpr double kTable1[16] = {4.504945, 8.504716, 6.748262, 8.416622, 8.360340, 8.416412, 8.416349, 8.416410,
                                4.511294, 4.883832, 7.380322, 4.877056, 4.877183, 4.876998, 4.876997, 4.876997};

void criterion1() {
  std::ostringstream out, err;
  report("1.cmd_table1", cli::cmd_table1(out, err) == 0, "command completes with exit status 0");

  const auto cells = table1();
  bool all = true;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Table1Cell& c = cells[i];
    const double tol = tolerance_for(c.h);
    const std::string id = "1.table1[beta=" + std::string(c.beta == 0.0 ? "0" : "-1e-4") + "," +
                           std::string(to_string(c.method)) + ",h=" + fmt("%.0e", c.h) + "]";
    if (!c.t1) {
      report(id, false, "no conjugate time: " + c.error);
      all = false;
      continue;
    }
    const double diff = std::abs(*c.t1 - kTable1[i]);
    const bool ok = diff <= tol;
    all = all && ok;
    report(id, ok, fmt("t1 = %.6f, expected %.6f", *c.t1, kTable1[i]) + fmt(", |diff| = %.2e (tol %.0e)", diff, tol));
  }
  report("1.table1", all, "all 16 entries within tolerance");
}

void criterion2() {
  StepConfig cfg;
  cfg.h = 1e-4;
  const auto flat = find_first_conjugate(kReference, {0.0}, cfg, 9.0, Method::verlet);
  report("2.flat_limit", flat && std::abs(flat->t1 - 8.416409) <= 1e-5,
         flat ? fmt("t1 = %.7f, expected 8.416409 +- 1e-5", flat->t1) : "none");
  const auto pert = find_first_conjugate(kReference, {defaults::perturbed_beta}, cfg, 9.0, Method::verlet);
  report("2.perturbed_limit", pert && std::abs(pert->t1 - 4.876997) <= 1e-5,
         pert ? fmt("t1 = %.7f, expected 4.876997 +- 1e-5", pert->t1) : "none");
}

void criterion3() {
  StepConfig cfg;
  cfg.h = 0.05;
  const double vv = phase_turns(integrate(kReference, {0.0}, cfg, 9.0, Method::verlet));
  const double rk = phase_turns(integrate(kReference, {0.0}, cfg, 9.0, Method::rk2));
  report("3.flat_periods", vv < 1.0 && rk > 1.5, fmt("verlet %.3f turns (< 1), rk2 %.3f turns (> 1.5)", vv, rk));

  cfg.h = 0.1;
  const auto vy = py_zero_crossings(integrate(kReference, {defaults::perturbed_beta}, cfg, 9.0, Method::verlet));
  const auto ry = py_zero_crossings(integrate(kReference, {defaults::perturbed_beta}, cfg, 9.0, Method::rk2));
  bool alternating = ry.size() >= 3;
  for (std::size_t i = 1; i < ry.size(); ++i) alternating = alternating && ry[i] * ry[i - 1] < 0.0;
  report("3.rk2_alternates", alternating,
         std::to_string(ry.size()) + " py = 0 crossings, signs of y alternate");
  bool right_well = vy.size() >= 2;
  for (std::size_t i = 1; i < vy.size(); ++i) right_well = right_well && vy[i] > 0.0;
  report("3.verlet_one_well", right_well,
         std::to_string(vy.size()) + " py = 0 crossings, y > 0 after the first");
}

void criterion4() {
  StepConfig cfg;
  cfg.h = 1e-4;
  std::vector<double> thetas;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) thetas.push_back(std::numbers::pi - eps);
  const auto recs = sweep_theta(thetas, defaults::pz, cfg);
  bool bound = true, trend = true;
  std::string values;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const SweepRecord& r = recs[i];
    bound = bound && r.resolved && r.R >= 2.0 / 3.0 - 1e-3 && r.R <= 1.0 + 1e-3;
    trend = trend && r.resolved && r.one_minus_R > 0.0 && (i == 0 || r.one_minus_R < recs[i - 1].one_minus_R);
    values += fmt(" eps=%.0e R=%.6f", r.eps, r.R);
  }
  report("4.bound", bound, "2/3 - 1e-3 <= R <= 1 + 1e-3;" + values);
  report("4.trend", trend, "1 - R positive and strictly decreasing as eps shrinks");

  const PzInvariance inv = pz_invariance_check({5.0, 10.0, 20.0}, defaults::theta0, cfg);
  report("4.pz_scaling", inv.spread <= 1e-3, fmt("relative spread of t1*sqrt(pz) = %.2e (<= 1e-3)", inv.spread));
}

void criterion5() {
  StepConfig cfg;
  cfg.h = 0.05;
  const DriftReport vv = drift_report(integrate(kReference, {0.0}, cfg, 9.0, Method::verlet), Method::verlet);
  const DriftReport rk = drift_report(integrate(kReference, {0.0}, cfg, 9.0, Method::rk2), Method::rk2);
  const double growth = vv.drift_half > 0.0 ? vv.max_drift / vv.drift_half : INFINITY;
  report("5.verlet_drift", vv.max_drift <= 0.05 && growth <= 3.0,
         fmt("max drift %.3e (<= 0.05), full/first-half ratio %.3f (<= 3)", vv.max_drift, growth));
  report("5.rk2_vs_verlet", rk.max_drift >= 10.0 * vv.max_drift,
         fmt("rk2 drift %.3e vs verlet %.3e, ratio %.1f", rk.max_drift, vv.max_drift, rk.max_drift / vv.max_drift));

  const Mat6 j = canonical_j();
  oracle::StateSampler sample(11);
  double defect = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const PhaseState s = trial == 0 ? kReference : sample();
    for (double beta : {0.0, defaults::perturbed_beta}) {
      const Mat6 d = step_with_jacobian(Method::verlet, s, {beta}, 0.05, cfg).jacobian;
      defect = std::max(defect, (d.transpose() * j * d - j).cwiseAbs().maxCoeff());
    }
  }
  report("5.symplectic", defect <= 1e-8, fmt("max |DPhi^T J DPhi - J| = %.2e (<= 1e-8)", defect));

  PhaseState s0 = kReference;
  s0.y = 0.3;
  s0.py = 0.2;
  double back = 0.0;
  for (double h : {0.1, 0.05, 0.01}) {
    back = std::max(back, state_error(verlet_step(verlet_step(s0, {0.0}, h, cfg), {0.0}, -h, cfg), s0));
  }
  report("5.reversible", back <= 1e-12, fmt("forward-backward error %.2e (<= 1e-12)", back));
}

Eigen::Matrix<double, 6, 1> as_col(const PhaseState& s) {
  Eigen::Matrix<double, 6, 1> v;
  v << s.x, s.y, s.z, s.px, s.py, s.pz;
  return v;
}

template <typename Map>
TangentBlock fd_tangent(const PhaseState& s0, Map&& map, double d) {
  TangentBlock fd;
  for (int j = 0; j < 3; ++j) {
    PhaseState plus = s0, minus = s0;
    double* pp[] = {&plus.px, &plus.py, &plus.pz};
    double* pm[] = {&minus.px, &minus.py, &minus.pz};
    *pp[j] += d;
    *pm[j] -= d;
    fd.col(j) = (as_col(map(plus)) - as_col(map(minus))) / (2 * d);
  }
  return fd;
}

double col_rel(const TangentBlock& approx, const TangentBlock& exact) {
  double worst = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double scale = std::max(exact.col(j).cwiseAbs().maxCoeff(), 1e-300);
    worst = std::max(worst, (approx.col(j) - exact.col(j)).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

void criterion6() {
  StepConfig cfg;
  oracle::StateSampler sample(21);
  double step_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const PhaseState s0 = trial == 0 ? kReference : sample();
    for (double beta : {0.0, defaults::perturbed_beta}) {
      for (Method m : {Method::rk2, Method::verlet}) {
        const auto t1 = step_tangent(s0, initial_tangent(), {beta}, 1e-2, cfg, m).second;
        const TangentBlock fd = fd_tangent(s0, [&](const PhaseState& s) { return step(m, s, {beta}, 1e-2, cfg); }, 1e-7);
        step_err = std::max(step_err, col_rel(t1, fd));
      }
    }
  }
  report("6.tangent_step", step_err <= 1e-6, fmt("max column-relative error %.2e (<= 1e-6)", step_err));

  cfg.h = 1e-3;
  double flow_err = 0.0;
  for (double beta : {0.0, defaults::perturbed_beta}) {
    for (Method m : {Method::rk2, Method::verlet}) {
      PhaseState s = kReference;
      TangentBlock t = initial_tangent();
      for (int n = 0; n < 1000; ++n) std::tie(s, t) = step_tangent(s, t, {beta}, cfg.h, cfg, m);
      const TangentBlock fd = fd_tangent(
          kReference, [&](const PhaseState& s0) { return integrate(s0, {beta}, cfg, 1.0, m).states.back(); }, 1e-6);
      flow_err = std::max(flow_err, col_rel(t, fd));
    }
  }
  report("6.tangent_flow", flow_err <= 1e-4, fmt("max column-relative error at t = 1: %.2e (<= 1e-4)", flow_err));

  double k_err = 0.0;
  for (double k : {0.1, 0.5, 0.9, 0.99, std::sin(defaults::theta0 / 2)}) {
    const double q = oracle::elliptic_K_quadrature(k);
    k_err = std::max(k_err, std::abs(elliptic_K(k) - q) / q);
  }
  report("6.elliptic_K", k_err <= 1e-10, fmt("max relative difference from quadrature %.2e (<= 1e-10)", k_err));

  for (double beta : {0.0, defaults::perturbed_beta}) {
    const PhaseState ref = oracle::rk4_flow(kReference, beta, 9.0);
    for (Method m : {Method::rk2, Method::verlet}) {
      StepConfig a, b;
      a.h = 2e-3;
      b.h = 1e-3;
      const double ea = state_error(integrate(kReference, {beta}, a, 9.0, m).states.back(), ref);
      const double eb = state_error(integrate(kReference, {beta}, b, 9.0, m).states.back(), ref);
      const double order = std::log2(ea / eb);
      report("6.order[" + std::string(to_string(m)) + ",beta=" + (beta == 0.0 ? "0" : "-1e-4") + "]", order >= 1.9,
             fmt("errors at t = 9: %.2e, %.2e; observed order %.3f (>= 1.9)", ea, eb, order));
    }
  }
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  std::printf("%d check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
