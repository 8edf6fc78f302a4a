#include "kuramoto/faddeeva.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace kuramoto {
namespace {

// Weideman's rational expansion in the upper half-plane. 40 terms give
// close to double precision everywhere except very near large real |x|,
// where the continued fraction takes over.
constexpr int kTerms = 40;

struct WeidemanTable {
  double L;
  std::array<double, kTerms> a;  // highest power first
};

WeidemanTable build_table() {
  WeidemanTable tab{};
  const int M = 2 * kTerms;
  const int M2 = 2 * M;
  tab.L = std::sqrt(kTerms / std::sqrt(2.0));
  // f sampled at t_k = L tan(theta_k / 2), k = -M+1 .. M-1, with a leading zero.
  std::array<double, 2 * M> f{};
  f[0] = 0.0;
  for (int k = -M + 1; k <= M - 1; ++k) {
    double theta = k * std::numbers::pi / M;
    double t = tab.L * std::tan(theta / 2);
    f[k + M] = std::exp(-t * t) * (tab.L * tab.L + t * t);
  }
  // fftshift then real part of the DFT, divided by M2.
  std::array<double, 2 * M> g{};
  for (int i = 0; i < M2; ++i) g[i] = f[(i + M) % M2];
  std::array<double, kTerms + 1> coef{};
  for (int n = 0; n <= kTerms; ++n) {
    double s = 0;
    for (int i = 0; i < M2; ++i) s += g[i] * std::cos(2 * std::numbers::pi * n * i / M2);
    coef[n] = s / M2;
  }
  for (int n = 0; n < kTerms; ++n) tab.a[n] = coef[kTerms - n];
  return tab;
}

const WeidemanTable& table() {
  static const WeidemanTable tab = build_table();
  return tab;
}

Complex weideman(Complex z) {
  const auto& tab = table();
  const Complex I(0, 1);
  Complex denom = tab.L - I * z;
  Complex Z = (tab.L + I * z) / denom;
  Complex p = 0;
  for (double c : tab.a) p = p * Z + c;
  return 2.0 * p / (denom * denom) + (1.0 / std::sqrt(std::numbers::pi)) / denom;
}

// Laplace continued fraction, accurate for large |z| with Im z >= 0.
Complex continued_fraction(Complex z) {
  const Complex I(0, 1);
  Complex t = z;
  for (int k = 60; k >= 1; --k) t = z - (k / 2.0) / t;
  return I / (std::sqrt(std::numbers::pi) * t);
}

Complex upper(Complex z) {
  if (std::abs(z) > 12.0) return continued_fraction(z);
  return weideman(z);
}

}  // namespace

Complex faddeeva_w(Complex z) {
  if (z.imag() >= 0) return upper(z);
  // Reflection into the upper half-plane.
  return 2.0 * std::exp(-z * z) - upper(-z);
}

double dawson(double x) { return faddeeva_w(Complex(x, 0)).imag() * std::sqrt(std::numbers::pi) / 2; }

}  // namespace kuramoto
