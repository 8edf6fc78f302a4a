#include <doctest.h>

#include <cmath>

#include "kuramoto/faddeeva.hpp"

using kuramoto::Complex;

// Reference values from scipy.special.wofz / dawsn.
TEST_CASE("faddeeva matches frozen reference values") {
  struct Case {
    Complex z, w;
  };
  const Case cases[] = {
      {{1.0, 1.0}, {0.30474420525691254, 0.2082189382028316}},
      {{0.5, 0.5}, {0.533156707912175, 0.2304882313844584}},
      {{3.0, 0.1}, {0.007942680998769991, 0.20074234309867736}},
      {{-2.0, 1.0}, {0.14023958136627795, -0.2222134401798991}},
      {{0.1, -0.3}, {1.4333382060907127, 0.1983268264854491}},
      {{15.0, 2.0}, {0.004959276753636047, 0.03703112494682468}},
      {{0.001, 8.0}, {0.06998516514777779, 8.616507753629276e-06}},
      {{-4.0, -0.5}, {-0.019225134419163358, -0.1432558579816224}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.z);
    CHECK(std::abs(kuramoto::faddeeva_w(c.z) - c.w) <= 1e-13 * std::max(1.0, std::abs(c.w)));
  }
}

TEST_CASE("faddeeva symmetries") {
  for (double x : {-3.0, -0.7, 0.0, 0.4, 2.5})
    for (double y : {0.05, 0.8, 4.0}) {
      Complex z(x, y);
      // w(-conj z) = conj w(z)
      CHECK(std::abs(kuramoto::faddeeva_w(-std::conj(z)) - std::conj(kuramoto::faddeeva_w(z))) < 1e-14);
      // w(z) + w(-z) = 2 exp(-z^2)
      CHECK(std::abs(kuramoto::faddeeva_w(z) + kuramoto::faddeeva_w(-z) - 2.0 * std::exp(-z * z)) < 1e-12);
    }
  CHECK(std::abs(kuramoto::faddeeva_w(0.0) - 1.0) < 1e-14);
}

TEST_CASE("dawson function") {
  CHECK(kuramoto::dawson(0.3) == doctest::Approx(0.282631665021312).epsilon(1e-13));
  CHECK(kuramoto::dawson(1.0) == doctest::Approx(0.5380795069127684).epsilon(1e-13));
  CHECK(kuramoto::dawson(5.0) == doctest::Approx(0.10213407442427686).epsilon(1e-13));
  CHECK(kuramoto::dawson(-1.0) == doctest::Approx(-0.5380795069127684).epsilon(1e-13));
}
