#include "kuramoto/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "kuramoto/faddeeva.hpp"

namespace kuramoto {

bool VerifyReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

namespace {

constexpr double pi = std::numbers::pi;

class Suite {
 public:
  // Absolute tolerance check; the computation runs inside a guard so one
  // failing method does not stop the rest.
  void close(const std::string& name, const std::string& anchor, double expected, double tol,
             const std::function<double()>& compute) {
    Check c{name, anchor, std::nan(""), expected, tol, false, ""};
    try {
      c.computed = compute();
      c.passed = std::abs(c.computed - expected) <= tol;
    } catch (const std::exception& e) {
      c.note = e.what();
    }
    report.checks.push_back(c);
  }
  void relative(const std::string& name, const std::string& anchor, double expected, double rtol,
                const std::function<double()>& compute) {
    close(name, anchor, expected, rtol * std::abs(expected), compute);
  }
  // computed <= bound
  void at_most(const std::string& name, const std::string& anchor, double bound, const std::function<double()>& compute) {
    Check c{name, anchor, std::nan(""), bound, 0.0, false, ""};
    try {
      c.computed = compute();
      c.passed = c.computed <= bound;
    } catch (const std::exception& e) {
      c.note = e.what();
    }
    report.checks.push_back(c);
  }

  VerifyReport report;
};

SpectralDensity two_step_fixture(double perturb) {
  double s = 1.0 + perturb;
  return SpectralDensity::piecewise_constant({{-1.0, -0.5, 1.0 * s}, {0.25, 1.25, 0.5 * s}});
}

double ordinate_near(const std::vector<double>& ys, double target) {
  if (ys.empty()) fail(ErrorKind::no_transition, "no critical ordinates");
  double best = ys.front();
  for (double y : ys)
    if (std::abs(y - target) < std::abs(best - target)) best = y;
  return best;
}

}  // namespace

VerifyReport run_verify(VerifyOptions opt) {
  Suite s;
  const auto gauss = builtin::standard_gaussian();
  const auto lor = builtin::standard_lorentzian();
  const auto step = two_step_fixture(opt.perturb);
  const auto twin = builtin::twin_peaks();
  const auto ramps = builtin::plateau_ramps();

  const double kc_gauss = 2.0 * std::sqrt(2.0 / pi);
  s.close("K_c_gaussian", "gaussian transition point 2 sqrt(2/pi)", kc_gauss, 1e-6,
          [&] { return transition_point(gauss); });
  s.report.K_c_gaussian = s.report.checks.back().computed;
  s.close("K_c_gaussian_sigma2", "even unimodal transition point 2/(pi g(0))", 2.0 * kc_gauss, 1e-6,
          [&] { return transition_point(SpectralDensity::gaussian(0.0, 2.0)); });
  s.close("K_c_lorentzian", "lorentzian transition point 2 gamma", 2.0, 1e-9, [&] { return transition_point(lor); });

  for (double K : {0.5, 1.0, 1.5}) {
    s.close("lorentzian_root_K" + format_double(K), "lorentzian root K/2 - 1", K / 2 - 1, 1e-8, [&] {
      auto res = find_roots(lor, K, {-3.0, 1.0, -2.0, 2.0});
      if (res.roots.size() != 1) fail(ErrorKind::count_mismatch, "expected a unique root");
      if (std::abs(res.roots[0].lambda.imag()) > 1e-8) return std::nan("");
      return res.roots[0].lambda.real();
    });
  }

  // Two-step density: three critical ordinates, K_c = 2/pi.
  const double step_ys[] = {-0.706, -0.044, 0.567};
  for (int i = 0; i < 3; ++i)
    s.close("two_step_ordinate_" + std::to_string(i), "two-step critical ordinates", step_ys[i], 1e-3,
            [&, i] { return ordinate_near(critical_ordinates(step), step_ys[i]); });
  s.close("two_step_K_c", "two-step transition point 2/pi", 2.0 / pi, 1e-6, [&] { return transition_point(step); });
  s.at_most("two_step_boundary_real", "boundary value real at critical ordinates", 1e-8, [&] {
    double worst = 0;
    for (double y : critical_ordinates(step))
      worst = std::max(worst, std::abs(boundary_value(step, y) - pi * eval(step, y)));
    return worst;
  });

  // Twin peaks fixture.
  s.close("twin_peaks_ordinate", "twin-peaks positive critical ordinate", 0.7459, 1e-3, [&] {
    auto ys = critical_ordinates(twin);
    return ys.back();
  });
  s.relative("twin_peaks_K_c", "twin-peaks transition point 2/(pi 1.9671)", 2.0 / (pi * 1.9671), 1e-3,
             [&] { return transition_point(twin); });

  // Plateau-and-ramps: two instability windows.
  {
    std::vector<InstabilityWindow> wins;
    std::string err;
    try {
      wins = instability_windows(ramps, 0.3);
    } catch (const std::exception& e) {
      err = e.what();
    }
    auto endpoint = [&](std::size_t k, bool hi) {
      return [&, k, hi] {
        if (!err.empty()) fail(ErrorKind::no_transition, err);
        if (wins.size() != 2) fail(ErrorKind::count_mismatch, "expected two windows, got " + std::to_string(wins.size()));
        return hi ? wins[k].hi : wins[k].lo;
      };
    };
    s.close("ramps_window1_lo", "plateau-ramps first window", 0.0909, 1e-3, endpoint(0, false));
    s.close("ramps_window1_hi", "plateau-ramps first window", 0.1604, 1e-3, endpoint(0, true));
    s.close("ramps_window2_lo", "plateau-ramps second window", 0.1616, 1e-3, endpoint(1, false));
    s.close("ramps_window2_open", "plateau-ramps second window open above", 1.0, 0.0, [&] {
      if (wins.size() != 2) fail(ErrorKind::count_mismatch, "expected two windows");
      return wins[1].open_above ? 1.0 : 0.0;
    });
  }

  // Gaussian resonance poles at K = 1.
  {
    RootSearchResult res;
    std::string err;
    const Window w{-8.5, 1.0, -9.0, 9.0};
    try {
      res = find_roots(gauss, 1.0, w);
    } catch (const std::exception& e) {
      err = e.what();
    }
    auto guard = [&] {
      if (!err.empty()) fail(ErrorKind::count_mismatch, err);
    };
    s.at_most("gaussian_pole_count_at_least_10", "gaussian resonance poles found", -10.0, [&] {
      guard();
      return -double(res.roots.size());
    });
    s.at_most("gaussian_poles_conjugate", "poles closed under conjugation", 1e-8, [&] {
      guard();
      double worst = 0;
      for (const auto& r : res.roots) {
        double best = INFINITY;
        for (const auto& q : res.roots) best = std::min(best, std::abs(q.lambda - std::conj(r.lambda)));
        worst = std::max(worst, best);
      }
      return worst;
    });
    s.at_most("gaussian_poles_simple", "poles are simple: min |2 lambda/K - 1| above 1e-3", -1e-3, [&] {
      guard();
      double m = INFINITY;
      for (const auto& r : res.roots) m = std::min(m, std::abs(2.0 * r.lambda - 1.0));
      return -m;
    });
    s.at_most("gaussian_residue_identity", "G'(lambda) = K/2 - lambda, relative error", 1e-6, [&] {
      guard();
      double worst = 0;
      for (const auto& r : res.roots) {
        Complex h = 1e-5;
        Complex fd = (characteristic_G(gauss, 1.0, r.lambda + h) - characteristic_G(gauss, 1.0, r.lambda - h)) / (2.0 * h);
        Complex exact = 0.5 - r.lambda;
        worst = std::max(worst, std::abs(fd - exact) / std::abs(exact));
      }
      return worst;
    });
    s.at_most("gaussian_poles_asymptotic_angle", "deepest poles near arg 3pi/4 or 5pi/4", 0.1, [&] {
      guard();
      double worst = 0;
      std::size_t n = res.roots.size();
      for (std::size_t i = n >= 2 ? n - 2 : 0; i < n; ++i) {
        double a = std::arg(res.roots[i].lambda);
        worst = std::max(worst, std::min(std::abs(std::abs(a) - 3 * pi / 4), std::abs(std::abs(a) - 5 * pi / 4)));
      }
      return worst;
    });
    s.close("gaussian_one_real_pole", "exactly one real pole", 1.0, 0.0, [&] {
      guard();
      int n = 0;
      for (const auto& r : res.roots) n += std::abs(r.lambda.imag()) < 1e-8;
      return double(n);
    });
    s.close("gaussian_count_consistency", "argument principle equals located roots", 0.0, 0.0, [&] {
      guard();
      int m = 0;
      for (const auto& r : res.roots) m += r.multiplicity;
      return double(count_zeros(gauss, 1.0, w) - m);
    });
  }

  s.close("gaussian_D0", "D0 = G'(0) at K_c is positive, equals K_c/2", kc_gauss / 2, 1e-8,
          [&] { return residue_coefficient(gauss, kc_gauss, 0.0).real(); });

  s.close("eta_initial_identity", "residue expansion reproduces eta(0)", 1.0, 1e-6, [&] {
    auto tr = predict_eta(gauss, 1.0, InitialFunction::constant_one(), {0.0});
    return std::abs(tr.values[0]);
  });
  s.close("lorentzian_eta_decay", "lorentzian eta(t) = exp((K/2 - 1) t) at t = 5", std::exp(-2.5), 1e-10, [&] {
    auto tr = predict_eta(lor, 1.0, InitialFunction::constant_one(), {5.0});
    return tr.values[0].real();
  });

  s.at_most("quadrature_normalization", "density quadratures integrate to the mass", 1e-10, [&] {
    double worst = 0;
    for (const auto& g : {gauss, lor, builtin::two_step(), twin, ramps}) {
      for (int n : {64, 256}) {
        auto rule = make_quadrature(g, n);
        worst = std::max(worst, std::abs(rule.integrate([](double) { return 1.0; }) - g.total_mass()) / g.total_mass());
      }
    }
    return worst;
  });

  s.close("gaussian_amplitude_prefactor", "leading-order amplitude coefficient", 1.4031, 1e-4, [&] {
    auto m = amplitude_model(gauss);
    return predicted_rc(m, m.K_c + 0.04).r / 0.2;
  });
  s.close("lorentzian_amplitude", "lorentzian amplitude sqrt(eps/2) at K = 2.2", std::sqrt(0.1), 1e-9, [&] {
    return predicted_rc(amplitude_model(lor), 2.2).r;
  });

  // Frozen reference value of w(1 + i).
  s.at_most("faddeeva_reference", "complex error function at 1+i", 1e-13, [&] {
    Complex ref(0.30474420525691254, 0.2082189382028316);
    return std::abs(faddeeva_w({1.0, 1.0}) - ref);
  });

  return s.report;
}

Json to_json(const VerifyReport& r) {
  Json j = Json::object();
  j["K_c_gaussian"] = r.K_c_gaussian;
  j["passed"] = r.all_passed();
  j["check_count"] = r.checks.size();
  Json arr = Json::array();
  for (const auto& c : r.checks) {
    Json e = {{"name", c.name}, {"anchor", c.anchor}};
    e["computed"] = std::isfinite(c.computed) ? Json(c.computed) : Json(format_double(c.computed));
    e["expected"] = c.expected;
    e["tol"] = c.tol;
    e["passed"] = c.passed;
    if (!c.note.empty()) e["error"] = c.note;
    arr.push_back(e);
  }
  j["checks"] = arr;
  return j;
}

}  // namespace kuramoto
