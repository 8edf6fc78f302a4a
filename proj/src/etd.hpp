#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>

namespace kuramoto::detail {

// Coefficients of the exponential fourth-order Runge-Kutta step for
// u' = L u + N(u) with diagonal L, evaluated by averaging over a small circle
// around L h so that |L h| -> 0 suffers no cancellation.
struct EtdCoefficients {
  Eigen::ArrayXXcd E, E2, Q, f1, f2, f3;
};

inline EtdCoefficients etd_coefficients(const Eigen::ArrayXXcd& L, double h) {
  using C = std::complex<double>;
  const int n_circle = 32;
  const Eigen::Index R = L.rows(), Cn = L.cols();
  EtdCoefficients c;
  c.E = (L * h).exp();
  c.E2 = (L * (h / 2)).exp();
  c.Q = Eigen::ArrayXXcd::Zero(R, Cn);
  c.f1 = c.f2 = c.f3 = c.Q;
  for (int k = 0; k < n_circle; ++k) {
    C r = std::exp(C(0, 2 * std::numbers::pi * (k + 0.5) / n_circle));
    Eigen::ArrayXXcd z = L * h + r;
    Eigen::ArrayXXcd ez = z.exp(), ez2 = (z / 2.0).exp();
    Eigen::ArrayXXcd z3 = z * z * z;
    c.Q += (ez2 - 1.0) / z;
    c.f1 += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
    c.f2 += (2.0 + z + ez * (z - 2.0)) / z3;
    c.f3 += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
  }
  double s = h / n_circle;
  c.Q = c.Q * s;
  c.f1 = c.f1 * s;
  c.f2 = c.f2 * s;
  c.f3 = c.f3 * s;
  return c;
}

}  // namespace kuramoto::detail
