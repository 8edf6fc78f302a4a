// One PASS/FAIL line per acceptance criterion, with the measured values and
// wall time. Exit status is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kuramoto/verify.hpp"

using namespace kuramoto;
constexpr double pi = std::numbers::pi;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double time_limit, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.passed = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0 && secs > time_limit) {
    o.passed = false;
    o.detail << " [runtime over " << time_limit << " s]";
  }
  failures += !o.passed;
  std::printf("%s criterion %d: %s:%s (%.2f s)\n", o.passed ? "PASS" : "FAIL", id, title.c_str(), o.detail.str().c_str(),
              secs);
  std::fflush(stdout);
}

double sup_diff(const EtaTrajectory& a, const EtaTrajectory& b, double t0) {
  double e = 0;
  for (std::size_t i = 0; i < a.times.size(); ++i)
    if (a.times[i] >= t0 - 1e-12) e = std::max(e, std::abs(a.values[i] - b.values[i]));
  return e;
}

double sup_vs(const EtaTrajectory& a, const std::function<Complex(double)>& f) {
  double e = 0;
  for (std::size_t i = 0; i < a.times.size(); ++i) e = std::max(e, std::abs(a.values[i] - f(a.times[i])));
  return e;
}

double tail_mean(const EtaTrajectory& t, double from) {
  double s = 0;
  int n = 0;
  for (std::size_t i = 0; i < t.times.size(); ++i)
    if (t.times[i] >= from) s += std::abs(t.values[i]), ++n;
  return s / n;
}

std::string num(double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

}  // namespace

int main() {
  criterion(1, "gaussian transition point", 1.0, [](Outcome& o) {
    RunConfig cfg;
    apply_setting(cfg, "density", "gaussian", "--density");
    validate(cfg);
    auto rep = analyze_transition(make_density(cfg), cfg.K_max);
    double expect = 2 * std::sqrt(2 / pi);
    o.detail << " K_c = " << num(rep.K_c, 12) << ", expected " << num(expect, 12);
    o.require(std::abs(rep.K_c - expect) <= 1e-6, "K_c within 1e-6");
  });

  criterion(2, "lorentzian exactness", 1.0, [](Outcome& o) {
    auto l = builtin::standard_lorentzian();
    double Kc = transition_point(l);
    o.detail << " K_c = " << num(Kc, 12);
    o.require(std::abs(Kc - 2.0) <= 1e-9, "K_c within 1e-9");
    for (double K : {0.5, 1.0, 1.5}) {
      auto res = find_roots(l, K, {-3.0, 2.0, -3.0, 3.0});
      o.require(res.roots.size() == 1, "unique root at K=" + num(K));
      if (res.roots.empty()) continue;
      double err = std::abs(res.roots[0].lambda - (K / 2 - 1));
      o.detail << "; K=" << K << " root " << num(res.roots[0].lambda.real(), 12) << " err " << num(err, 3);
      o.require(err <= 1e-8, "root K/2-1 within 1e-8");
    }
  });

  criterion(3, "two-step goldens", 1.0, [](Outcome& o) {
    auto g = builtin::two_step();
    auto ys = critical_ordinates(g);
    const double expect[] = {-0.706, -0.044, 0.567};
    o.require(ys.size() == 3, "three critical ordinates");
    o.detail << " ordinates";
    for (std::size_t i = 0; i < ys.size() && i < 3; ++i) {
      o.detail << " " << num(ys[i], 6);
      o.require(std::abs(ys[i] - expect[i]) <= 1e-3, "ordinate " + num(expect[i]));
    }
    double Kc = transition_point(g);
    o.detail << "; K_c = " << num(Kc, 12) << " vs 2/pi";
    o.require(std::abs(Kc - 2 / pi) <= 1e-6, "K_c within 1e-6");
  });

  criterion(4, "twin-peaks fixture", 0, [](Outcome& o) {
    auto g = builtin::twin_peaks();
    auto ys = critical_ordinates(g);
    double y = ys.back();
    double Kc = transition_point(g);
    double expect = 2 / (pi * 1.9671);
    o.detail << " positive ordinate " << num(y, 7) << ", K_c = " << num(Kc, 8) << " vs " << num(expect, 8);
    o.require(std::abs(y - 0.7459) <= 1e-3, "ordinate within 1e-3");
    o.require(std::abs(Kc - expect) <= 1e-3 * expect, "K_c within 1e-3 relative");
  });

  criterion(5, "plateau-ramps instability windows", 30.0, [](Outcome& o) {
    const double K_max = 1.0;
    auto w = instability_windows(builtin::plateau_ramps(), K_max);
    o.require(w.size() == 2, "two windows");
    for (const auto& x : w)
      o.detail << " (" << num(x.lo, 6) << ", " << (x.open_above ? "K_max" : num(x.hi, 6)) << ")";
    if (w.size() == 2) {
      o.require(std::abs(w[0].lo - 0.0909) <= 1e-3 && std::abs(w[0].hi - 0.1604) <= 1e-3, "first window endpoints");
      o.require(!w[0].open_above, "first window closed");
      o.require(std::abs(w[1].lo - 0.1616) <= 1e-3 && w[1].open_above && w[1].hi == K_max, "second window up to K_max");
    }
  });

  criterion(6, "gaussian resonance pole properties at K=1", 30.0, [](Outcome& o) {
    auto g = builtin::standard_gaussian();
    const double K = 1.0;
    auto res = find_roots(g, K, {-8.5, 1.0, -9.0, 9.0});
    const auto& r = res.roots;
    o.detail << " " << r.size() << " poles";
    o.require(r.size() >= 10, "at least 10 poles");
    double conj_err = 0, min_sep = INFINITY, deriv_err = 0;
    int real = 0;
    for (const auto& x : r) {
      double best = INFINITY;
      for (const auto& y : r) best = std::min(best, std::abs(y.lambda - std::conj(x.lambda)));
      conj_err = std::max(conj_err, best);
      min_sep = std::min(min_sep, std::abs(2.0 * x.lambda / K - 1.0));
      Complex h = 1e-5 * std::max(1.0, std::abs(x.lambda));
      Complex fd = (characteristic_G(g, K, x.lambda + h) - characteristic_G(g, K, x.lambda - h)) / (2.0 * h);
      Complex exact = K / 2 - x.lambda;
      deriv_err = std::max(deriv_err, std::abs(fd - exact) / std::abs(exact));
      real += std::abs(x.lambda.imag()) < 1e-8;
    }
    // Deepest pair found.
    double angle_err = 0;
    for (std::size_t i = r.size() >= 2 ? r.size() - 2 : 0; i < r.size(); ++i) {
      double a = std::abs(std::arg(r[i].lambda));
      angle_err = std::max(angle_err, std::abs(a - 3 * pi / 4));
    }
    o.detail << "; conj " << num(conj_err, 3) << "; min|2l/K-1| " << num(min_sep, 4) << "; G' rel err "
             << num(deriv_err, 3) << "; deepest arg err " << num(angle_err, 3) << " rad; real poles " << real;
    o.require(conj_err <= 1e-8, "conjugate closure");
    o.require(min_sep > 1e-3, "simplicity margin");
    o.require(deriv_err <= 1e-6, "numerical G' agreement");
    o.require(angle_err <= 0.1, "asymptotic rays");
    o.require(real == 1, "exactly one real pole");
  });

  criterion(7, "linear-theory oracle equivalence", 60.0, [](Outcome& o) {
    auto l = builtin::standard_lorentzian();
    auto P0 = InitialFunction::constant_one();
    auto ts = linspace(0.0, 10.0, 201);
    auto lp = predict_eta(l, 1.0, P0, ts);
    auto ld = direct_integration(l, 1.0, P0, ts, make_quadrature(l, 8000));
    auto ex = [](double t) { return Complex(std::exp(-t / 2)); };
    double e1 = sup_vs(lp, ex), e2 = sup_vs(ld, ex), e3 = sup_diff(lp, ld, 0.0);
    o.detail << " lorentzian: predict-exact " << num(e1, 3) << ", direct-exact " << num(e2, 3) << ", predict-direct "
             << num(e3, 3);
    o.require(e1 <= 1e-3 && e2 <= 1e-3 && e3 <= 1e-3, "lorentzian three-way agreement");

    auto g = builtin::standard_gaussian();
    PredictionDetail det;
    PredictOptions po;
    po.strip_depth = 3.0;
    auto gp = predict_eta(g, 1.0, P0, ts, po, &det);
    auto gd = direct_integration(g, 1.0, P0, ts, make_quadrature(g, 256));
    double eg = sup_diff(gp, gd, 1.0);
    auto lead = find_roots(g, 1.0, {-1.0, 0.5, -1.0, 1.0});
    double re0 = lead.roots.at(0).lambda.real();
    double slope = log_slope(gd, 2.0, 8.0);
    o.detail << "; gaussian: a=" << det.strip_depth << " with " << det.poles.size() << " poles, sup err on [1,10] "
             << num(eg, 3) << ", slope " << num(slope, 6) << " vs Re l0 " << num(re0, 6);
    o.require(det.poles.size() >= 3, "at least 3 poles in the strip");
    o.require(eg <= 1e-3, "gaussian residue form vs direct");
    o.require(std::abs(slope - re0) <= 0.05 * std::abs(re0), "decay slope within 5%");
  });

  criterion(8, "nonlinear stability below K_c", 60.0, [](Outcome& o) {
    auto g = builtin::standard_gaussian();
    auto rule = make_quadrature(g, 512, QuadratureScheme::equispaced);
    std::vector<Complex> h(8, 0.0);
    h[0] = 1e-3;
    auto tr = simulate_galerkin(g, 1.0, 8, rule, h, 100.0, 0.025, 0.5);
    double end = std::abs(tr.values.back());
    double slope = log_slope(tr, 10.0, 40.0);
    auto lead = find_roots(g, 1.0, {-1.0, 0.5, -1.0, 1.0});
    double re0 = lead.roots.at(0).lambda.real();
    o.detail << " J=8, M=512: |eta(100)| = " << num(end, 3) << ", slope on [10,40] " << num(slope, 6) << " vs "
             << num(re0, 6);
    o.require(end < 1e-6, "|eta(100)| < 1e-6");
    o.require(std::abs(slope - re0) <= 0.05 * std::abs(re0), "slope within 5%");
  });

  criterion(9, "square-root scaling above K_c", 300.0, [](Outcome& o) {
    auto g = builtin::standard_gaussian();
    double Kc = transition_point(g);
    std::vector<double> eps = {0.02, 0.04, 0.06, 0.08, 0.10}, K, r;
    for (double e : eps) K.push_back(Kc + e);
    BifurcationSimParams p;  // one-mode Poisson closure, 4096 nodes, T = 900
    auto curve = bifurcation_diagram(g, K, p);
    o.detail << " r:";
    bool converged = true;
    for (const auto& row : curve.rows) {
      r.push_back(row.r_sim);
      o.detail << " " << num(row.r_sim, 5);
      converged &= row.converged;
    }
    auto fit = fit_scaling(eps, r);
    o.detail << "; slope " << num(fit.slope, 4) << "; prefactor " << num(fit.prefactor, 5) << " vs 1.4031";
    o.require(converged, "all runs converged");
    o.require(std::abs(fit.slope - 0.5) <= 0.08, "log-log slope 0.5 +- 0.08");
    o.require(std::abs(fit.prefactor - 1.4031) <= 0.1 * 1.4031, "prefactor within 10%");

    BifurcationSimParams pl;
    auto lc = bifurcation_diagram(builtin::standard_lorentzian(), {2.5}, pl);
    double exact = std::sqrt(1 - 2 / 2.5);
    o.detail << "; lorentzian K=2.5 r " << num(lc.rows[0].r_sim, 6) << " vs " << num(exact, 6);
    o.require(std::abs(lc.rows[0].r_sim - exact) <= 0.05 * exact, "lorentzian amplitude within 5%");
  });

  criterion(10, "argument-principle counts match located roots", 0, [](Outcome& o) {
    struct Case {
      SpectralDensity g;
      double K;
      Window w;
    };
    const auto gauss = builtin::standard_gaussian();
    const auto lor = builtin::standard_lorentzian();
    const auto mix = SpectralDensity::gaussian_mixture({{0.5, -1.5, 0.5}, {0.5, 1.5, 0.5}});
    std::vector<Case> cases = {
        {lor, 0.5, {-3.0, 2.0, -3.0, 3.0}},  {lor, 1.0, {-3.0, 2.0, -3.0, 3.0}},
        {lor, 1.5, {-3.0, 2.0, -3.0, 3.0}},  {lor, 3.0, {0.1, 2.0, -1.0, 1.0}},
        {lor, 1.0, {0.1, 2.0, -1.0, 1.0}},   {gauss, 1.0, {-8.5, 1.0, -9.0, 9.0}},
        {gauss, 1.0, {-3.0, -0.05, -6.0, 6.0}}, {gauss, 1.0, {-1.0, 0.5, -1.0, 1.0}},
        {gauss, 2 * std::sqrt(2 / pi), {-0.3, 0.3, -0.3, 0.3}}, {gauss, 2.0, {0.01, 2.0, -1.0, 1.0}},
        {mix, 1.0, {-4.0, 1.5, -5.0, 5.0}},  {mix, 1.0, {-6.0, -0.5, 1.0, 7.0}},
        {builtin::two_step(), 1.0, {1e-6, 1.5, -2.5, 2.5}},
        {builtin::twin_peaks(), 0.5, {1e-6, 1.5, -2.5, 2.5}},
        {builtin::plateau_ramps(), 0.12, {1e-6, 5.0, -4.0, 4.0}},
        {builtin::plateau_ramps(), 0.2, {1e-6, 5.0, -4.0, 4.0}},
    };
    int worst = 0, roots = 0;
    for (const auto& c : cases) {
      auto res = find_roots(c.g, c.K, c.w);
      int m = 0;
      for (const auto& x : res.roots) m += x.multiplicity;
      int count = count_zeros(c.g, c.K, c.w);
      roots += m;
      worst = std::max(worst, std::abs(count - m));
      if (count != m) o.detail << " mismatch for " << describe(c.g) << " at K=" << c.K << ";";
    }
    o.detail << " " << cases.size() << " windows, " << roots << " roots, max |count - found| = " << worst;
    o.require(worst == 0, "exact integer match");
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
