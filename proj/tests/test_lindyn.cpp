#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kuramoto/lindyn.hpp"

using namespace kuramoto;


static double sup_diff(const EtaTrajectory& a, const EtaTrajectory& b, double t0 = 0.0) {
  double e = 0;
  for (std::size_t i = 0; i < a.times.size(); ++i)
    if (a.times[i] >= t0) e = std::max(e, std::abs(a.values[i] - b.values[i]));
  return e;
}

TEST_CASE("pairing examples") {
  auto g = builtin::standard_gaussian();
  auto l = builtin::standard_lorentzian();
  auto P0 = InitialFunction::constant_one();
  auto poles = find_roots(g, 1.0, {-4.0, 0.5, -5.0, 5.0});
  for (const auto& r : poles.roots) CHECK(std::abs(pairing_Q(g, r.lambda, P0) - 2.0) < 1e-8);
  CHECK(std::abs(pairing_Q(l, 1.0, P0) - 0.5) < 1e-14);
  CHECK(std::abs(pairing_Q(l, 1.0, P0, make_quadrature(l, 4000)) - 0.5) < 1e-6);
  CHECK(std::abs(pairing_Q(g, 0.8, P0).imag()) < 1e-12);
}

TEST_CASE("pairing closed forms agree with quadrature for every profile") {
  auto g = builtin::standard_gaussian();
  auto rule = make_quadrature(g, 1024);
  auto phi = InitialFunction::exp_profile(0.7, Complex(0.3, 0.1)) + InitialFunction::rational_profile(1.5, 0.5) +
             InitialFunction::constant_one(0.2);
  for (Complex lam : {Complex(0.5, 0.0), Complex(1.0, 2.0), Complex(2.0, -1.0)})
    CHECK(std::abs(pairing_Q(g, lam, phi) - pairing_Q(g, lam, phi, rule)) < 1e-9);
}

TEST_CASE("lorentzian prediction is the exact exponential") {
  auto l = builtin::standard_lorentzian();
  auto ts = linspace(0.0, 10.0, 101);
  for (double K : {0.5, 1.0, 1.5}) {
    auto p = predict_eta(l, K, InitialFunction::constant_one(), ts);
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(std::abs(p.values[i] - std::exp((K / 2 - 1) * ts[i])) < 1e-10);
  }
}

TEST_CASE("lorentzian prediction and direct integration agree") {
  // Algebraic tails need many nodes; see the README on resolution.
  auto l = builtin::standard_lorentzian();
  auto rule = make_quadrature(l, 8000);
  auto ts = linspace(0.0, 10.0, 101);
  for (double K : {0.5, 1.0, 1.5}) {
    auto p = predict_eta(l, K, InitialFunction::constant_one(), ts);
    auto d = direct_integration(l, K, InitialFunction::constant_one(), ts, rule);
    CHECK(sup_diff(p, d) < 1e-3);
  }
}

TEST_CASE("initial value identity") {
  for (const auto& g : {builtin::standard_gaussian(), SpectralDensity::gaussian(0.4, 0.8)}) {
    for (double K : {0.5, 1.0}) {
      auto p = predict_eta(g, K, InitialFunction::constant_one(), {0.0});
      CHECK(std::abs(p.values[0] - 1.0) < 1e-4);
    }
  }
  auto l = predict_eta(builtin::standard_lorentzian(), 1.0, InitialFunction::constant_one(), {0.0});
  CHECK(std::abs(l.values[0] - 1.0) < 1e-10);
  // Other profiles: eta(0) is the integral of phi g.
  auto g = builtin::standard_gaussian();
  auto phi = InitialFunction::exp_profile(0.5);
  auto p = predict_eta(g, 1.0, phi, {0.0});
  CHECK(std::abs(p.values[0] - std::exp(-0.125)) < 1e-4);
  auto d = direct_integration(g, 1.0, phi, {0.0}, make_quadrature(g, 128));
  CHECK(std::abs(d.values[0] - std::exp(-0.125)) < 1e-12);
}

TEST_CASE("free evolution is the characteristic function") {
  auto g = builtin::standard_gaussian();
  auto ts = linspace(0.0, 5.0, 51);
  auto d = direct_integration(g, 0.0, InitialFunction::constant_one(), ts, make_quadrature(g, 256));
  for (std::size_t i = 0; i < ts.size(); ++i) CHECK(std::abs(d.values[i] - std::exp(-ts[i] * ts[i] / 2)) < 1e-6);
}

TEST_CASE("gaussian residue expansion matches direct integration") {
  auto g = builtin::standard_gaussian();
  auto ts = linspace(0.0, 10.0, 101);
  auto rule = make_quadrature(g, 256);
  for (double K : {0.5, 1.0, 1.4}) {
    PredictionDetail det;
    auto p = predict_eta(g, K, InitialFunction::constant_one(), ts, {}, &det);
    auto d = direct_integration(g, K, InitialFunction::constant_one(), ts, rule);
    CHECK(det.poles.size() >= 3);
    CHECK(sup_diff(p, d, 1.0) < 1e-3);
  }
}

TEST_CASE("decay and growth rates follow the leading root") {
  auto g = builtin::standard_gaussian();
  auto ts = linspace(0.0, 10.0, 201);
  auto rule = make_quadrature(g, 256);
  auto d = direct_integration(g, 1.0, InitialFunction::constant_one(), ts, rule);
  auto lead = find_roots(g, 1.0, {-1.0, 0.5, -1.0, 1.0});
  REQUIRE(lead.roots.size() == 1);
  double s = log_slope(d, 2.0, 8.0);
  CHECK(std::abs(s - lead.roots[0].lambda.real()) <= 0.05 * std::abs(lead.roots[0].lambda.real()));

  auto up = find_roots(g, 2.0, {0.01, 2.0, -1.0, 1.0});
  REQUIRE(up.roots.size() == 1);
  auto grow = predict_eta(g, 2.0, InitialFunction::constant_one(), ts);
  double gs = log_slope(grow, 4.0, 10.0);
  CHECK(std::abs(gs - up.roots[0].lambda.real()) <= 0.05 * up.roots[0].lambda.real());
  auto gd = direct_integration(g, 2.0, InitialFunction::constant_one(), ts, rule);
  CHECK(std::abs(log_slope(gd, 4.0, 10.0) - up.roots[0].lambda.real()) <= 0.05 * up.roots[0].lambda.real());
}

static std::vector<double> bare_sum_errors(double K, double t0) {
  auto g = builtin::standard_gaussian();
  auto ts = linspace(t0, 10.0, int(std::lround((10.0 - t0) * 10)) + 1);
  auto d = direct_integration(g, K, InitialFunction::constant_one(), ts, make_quadrature(g, 256));
  std::vector<double> errs;
  for (double a : {1.0, 2.0, 3.0, 4.0, 5.0, 6.0}) {
    PredictOptions po;
    po.strip_depth = a;
    po.include_remainder = false;
    errs.push_back(sup_diff(predict_eta(g, K, InitialFunction::constant_one(), ts, po), d));
  }
  return errs;
}

// Stated over t >= 1 the property is false: the pole pair near Re = -3.9
// overshoots at t = 1 (K = 0.5: 1.19e-2 -> 1.56e-2 going from a = 3 to 4).
// Kept as an expected failure so a change in behaviour is noticed.
TEST_CASE("deeper truncation never worsens the bare pole sum on t >= 1" * doctest::should_fail()) {
  for (double K : {0.5, 1.0}) {
    auto e = bare_sum_errors(K, 1.0);
    for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] <= e[i - 1] * (1 + 1e-9));
  }
}

TEST_CASE("deeper truncation never worsens the bare pole sum on t >= 2") {
  for (double K : {0.5, 1.0}) {
    auto e = bare_sum_errors(K, 2.0);
    for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] <= e[i - 1] * (1 + 1e-9));
    CHECK(e.back() < 1e-5);
  }
}

TEST_CASE("rational initial profile") {
  auto g = builtin::standard_gaussian();
  auto phi = InitialFunction::rational_profile(2.0);
  auto ts = linspace(0.0, 8.0, 81);
  auto p = predict_eta(g, 1.0, phi, ts);
  auto d = direct_integration(g, 1.0, phi, ts, make_quadrature(g, 256));
  CHECK(sup_diff(p, d, 1.0) < 1e-3);
}

TEST_CASE("log slope helper") {
  EtaTrajectory t;
  for (int i = 0; i <= 10; ++i) {
    t.times.push_back(i);
    t.values.push_back(std::exp(-0.3 * i) * std::polar(1.0, 0.2 * i));
  }
  CHECK(log_slope(t, 0, 10) == doctest::Approx(-0.3));
  CHECK_THROWS_AS(log_slope(t, 20, 30), Error);
}
