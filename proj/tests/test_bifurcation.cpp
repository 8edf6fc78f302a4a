#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kuramoto/bifurcation.hpp"

using namespace kuramoto;
constexpr double pi = std::numbers::pi;

TEST_CASE("amplitude models") {
  auto lm = amplitude_model(builtin::standard_lorentzian());
  CHECK(lm.K_c == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(lm.D0 - 1.0) < 1e-10);
  CHECK(lm.cubic_coeff == doctest::Approx(-2.0).epsilon(1e-12));

  auto gm = amplitude_model(builtin::standard_gaussian());
  CHECK(gm.K_c == doctest::Approx(2 * std::sqrt(2 / pi)).epsilon(1e-12));
  CHECK(gm.gpp0 == doctest::Approx(-1 / std::sqrt(2 * pi)).epsilon(1e-12));
  // Positive, and equal to a central difference of G at the origin.
  CHECK(gm.D0.real() > 0);
  Complex h = 1e-5;
  auto g = builtin::standard_gaussian();
  Complex fd = (characteristic_G(g, gm.K_c, h) - characteristic_G(g, gm.K_c, -h)) / (2.0 * h);
  CHECK(std::abs(gm.D0 - fd) < 1e-8);
  CHECK(gm.cubic_coeff < 0);
}

TEST_CASE("amplitude model guards") {
  try {
    amplitude_model(builtin::twin_peaks());
    FAIL("expected NotEvenUnimodal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_even_unimodal);
  }
  try {
    amplitude_model(builtin::two_step());
    FAIL("expected NotEvenUnimodal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_even_unimodal);
  }
}

TEST_CASE("amplitude right-hand side") {
  auto lm = amplitude_model(builtin::standard_lorentzian());
  CHECK(std::abs(amplitude_rhs(lm, 0.0, 0.3)) == 0.0);
  double eps = 0.2;
  Complex a = std::polar(std::sqrt(eps / 2), 0.7);
  CHECK(std::abs(amplitude_rhs(lm, a, eps)) < 1e-15);
  auto gm = amplitude_model(builtin::standard_gaussian());
  for (Complex a2 : {Complex(1e-3, 0), Complex(-2e-3, 1e-3)})
    CHECK((std::conj(a2) * amplitude_rhs(gm, a2, -0.05)).real() < 0);
}

TEST_CASE("predicted amplitude") {
  auto gm = amplitude_model(builtin::standard_gaussian());
  auto p = predicted_rc(gm, gm.K_c + 0.04);
  CHECK(p.r == doctest::Approx(1.4031 * 0.2).epsilon(1e-4));
  CHECK(p.half_width == doctest::Approx(0.04));
  CHECK(p.stable);
  CHECK_FALSE(p.subcritical);
  CHECK(predicted_rc(gm, gm.K_c).r == 0.0);
  CHECK(predicted_rc(gm, gm.K_c - 0.1).r == 0.0);
  auto lm = amplitude_model(builtin::standard_lorentzian());
  CHECK(predicted_rc(lm, 2.2).r == doctest::Approx(std::sqrt(0.1)).epsilon(1e-12));
}

TEST_CASE("sign of the curvature sets the branch direction") {
  auto super = amplitude_model(1.5, 1.0, -0.3);
  auto sub = amplitude_model(1.5, 1.0, 0.3);
  CHECK(predicted_rc(super, 1.6).r > 0);
  CHECK(predicted_rc(super, 1.4).r == 0.0);
  auto back = predicted_rc(sub, 1.4);
  CHECK(back.r > 0);
  CHECK(back.subcritical);
  CHECK_FALSE(back.stable);
  CHECK(predicted_rc(sub, 1.6).r == 0.0);
}

TEST_CASE("pitchfork branch attracts") {
  auto gm = amplitude_model(builtin::standard_gaussian());
  const double eps = 0.05;
  const double rc = predicted_rc(gm, gm.K_c + eps).r;
  for (double r0 : {0.1 * rc, 0.7 * rc, 1.9 * rc}) {
    Complex a = std::polar(r0, 0.3);
    const double dt = 0.05;
    // Classical RK4 on the amplitude equation.
    for (int i = 0; i < 40000; ++i) {
      Complex k1 = amplitude_rhs(gm, a, eps);
      Complex k2 = amplitude_rhs(gm, a + 0.5 * dt * k1, eps);
      Complex k3 = amplitude_rhs(gm, a + 0.5 * dt * k2, eps);
      Complex k4 = amplitude_rhs(gm, a + dt * k3, eps);
      a += dt / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    CHECK(std::abs(std::abs(a) - rc) < 1e-6);
  }
}

TEST_CASE("bifurcation diagram below and above threshold") {
  auto g = builtin::standard_gaussian();
  BifurcationSimParams p;
  p.nodes = 1024;
  p.T = 300;
  auto below = bifurcation_diagram(g, {1.0, 1.3, 1.5}, p);
  for (const auto& row : below.rows) {
    CHECK(row.r_sim <= 0.02);
    CHECK(row.r_theory == 0.0);
  }
  auto l = builtin::standard_lorentzian();
  BifurcationSimParams pl;
  pl.nodes = 4096;
  pl.T = 600;
  auto up = bifurcation_diagram(l, {2.5}, pl);
  CHECK(up.rows[0].converged);
  CHECK(std::abs(up.rows[0].r_sim - std::sqrt(1 - 2 / 2.5)) <= 0.05 * std::sqrt(1 - 2 / 2.5));
  CHECK_THROWS_AS(bifurcation_diagram(g, {1.2, 1.1}, p), Error);
}

TEST_CASE("scaling fit recovers a square root") {
  std::vector<double> e = {0.02, 0.04, 0.06, 0.08, 0.1}, r;
  for (double x : e) r.push_back(1.4 * std::sqrt(x) * (1 + 0.3 * x));
  auto f = fit_scaling(e, r);
  CHECK(f.prefactor == doctest::Approx(1.4).epsilon(1e-10));
  CHECK(std::abs(f.slope - 0.5) < 0.05);
}
