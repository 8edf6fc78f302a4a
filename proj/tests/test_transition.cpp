#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kuramoto/transition.hpp"

using namespace kuramoto;
constexpr double pi = std::numbers::pi;

TEST_CASE("critical ordinates") {
  auto ys = critical_ordinates(builtin::two_step());
  REQUIRE(ys.size() == 3);
  CHECK(std::abs(ys[0] + 0.706) < 1e-3);
  CHECK(std::abs(ys[1] + 0.044) < 1e-3);
  CHECK(std::abs(ys[2] - 0.567) < 1e-3);

  auto gy = critical_ordinates(builtin::standard_gaussian());
  REQUIRE(gy.size() == 1);
  CHECK(gy[0] == 0.0);

  auto ry = critical_ordinates(builtin::plateau_ramps());
  const double expect[] = {-2.1032, -1.6882, -1.4046, 0.0, 1.4046, 1.6882, 2.1032};
  REQUIRE(ry.size() == 7);
  for (int i = 0; i < 7; ++i) CHECK(std::abs(ry[i] - expect[i]) < 1e-3);
}

TEST_CASE("critical ordinates are zeros of the transform with real boundary value") {
  for (const auto& g : {builtin::two_step(), builtin::twin_peaks(), builtin::plateau_ramps(), builtin::standard_gaussian()}) {
    for (double y : critical_ordinates(g)) {
      CHECK(std::abs(hilbert_transform(g, y)) <= 1e-8);
      CHECK(std::abs(boundary_value(g, y) - pi * eval(g, y)) <= 1e-8);
    }
  }
}

TEST_CASE("transition points") {
  CHECK(std::abs(transition_point(builtin::two_step()) - 2 / pi) < 1e-6);
  CHECK(std::abs(transition_point(builtin::standard_gaussian()) - 2 * std::sqrt(2 / pi)) < 1e-9);
  CHECK(std::abs(transition_point(builtin::standard_lorentzian()) - 2.0) < 1e-9);
  auto rep = analyze_transition(builtin::standard_gaussian(), 3.0);
  REQUIRE(rep.kuramoto_point.has_value());
  CHECK(*rep.kuramoto_point == doctest::Approx(rep.K_c));
  auto twin = analyze_transition(builtin::twin_peaks(), 0.5);
  CHECK_FALSE(twin.kuramoto_point.has_value());
  CHECK(twin.K_c == doctest::Approx(2 / (pi * 1.9671)).epsilon(1e-3));
}

TEST_CASE("instability windows") {
  auto w = instability_windows(builtin::plateau_ramps(), 0.3);
  REQUIRE(w.size() == 2);
  CHECK(std::abs(w[0].lo - 0.0909) < 1e-3);
  CHECK(std::abs(w[0].hi - 0.1604) < 1e-3);
  CHECK_FALSE(w[0].open_above);
  CHECK(std::abs(w[1].lo - 0.1616) < 1e-3);
  CHECK(w[1].open_above);

  auto gw = instability_windows(builtin::standard_gaussian(), 3.0);
  REQUIRE(gw.size() == 1);
  CHECK(gw[0].lo == doctest::Approx(2 * std::sqrt(2 / pi)).epsilon(1e-5));
  CHECK(gw[0].open_above);

  CHECK(instability_windows(builtin::standard_gaussian(), 1.0).empty());
}

TEST_CASE("narrow stable gap survives a coarse grid") {
  // Gap is ~1.2e-3 wide; the uniform grid alone steps over it at K_max = 1.
  auto w = instability_windows(builtin::plateau_ramps(), 1.0);
  REQUIRE(w.size() == 2);
  CHECK(w[0].hi == doctest::Approx(0.1604).epsilon(1e-2));
  CHECK(w[1].lo == doctest::Approx(0.1616).epsilon(1e-2));
  CHECK(w[1].open_above);
}

TEST_CASE("eigenvalues emerge exactly at K_c") {
  for (const auto& g : {builtin::standard_gaussian(), builtin::standard_lorentzian(), builtin::two_step(),
                        builtin::twin_peaks(), builtin::plateau_ramps()}) {
    CAPTURE(describe(g));
    double Kc = transition_point(g);
    auto above = find_roots(g, Kc * (1 + 1e-3), {1e-7, 0.1, -4.0, 4.0});
    CHECK(above.roots.size() >= 1);
    CHECK(count_eigenvalues(g, Kc * (1 - 1e-3)) == 0);
  }
}

TEST_CASE("continued root is real above K_c for even unimodal densities") {
  auto g = builtin::standard_gaussian();
  double Kc = transition_point(g);
  auto path = continue_root_in_K(g, Kc, 2 * Kc, 30, 0.0);
  for (const auto& p : path.points) {
    CHECK(std::abs(p.lambda.imag()) < 1e-9);
    if (p.K > Kc) CHECK(p.lambda.real() > 0);
  }
}
