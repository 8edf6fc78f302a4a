#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "kuramoto/errors.hpp"

namespace kuramoto {

using Complex = std::complex<double>;

enum class DensityKind { gaussian, lorentzian, gaussian_mixture, piecewise_constant, piecewise_linear };
enum class Analyticity { entire_type, rational, real_axis_only };
enum class TailClass { super_exponential, algebraic, compact_support };

struct GaussianComponent {
  double weight = 1.0;
  double mean = 0.0;
  double sigma = 1.0;
};

// Linear piece of a piecewise density on [a, b]: value_a at a, value_b at b.
struct Segment {
  double a = 0.0;
  double b = 0.0;
  double value_a = 0.0;
  double value_b = 0.0;

  double slope() const { return (value_b - value_a) / (b - a); }
  // Linear extension of this piece to any real (or complex) abscissa.
  template <class T>
  T extend(T x) const { return value_a + slope() * (x - a); }
};

// Natural frequency density. Immutable once built; copies are cheap enough
// to pass around by value.
class SpectralDensity {
 public:
  static SpectralDensity gaussian(double mean = 0.0, double sigma = 1.0);
  static SpectralDensity lorentzian(double scale = 1.0);
  static SpectralDensity gaussian_mixture(std::vector<GaussianComponent> components);
  // Each triple is (a, b, c): value c on [a, b].
  static SpectralDensity piecewise_constant(const std::vector<std::array<double, 3>>& pieces);
  static SpectralDensity piecewise_linear(std::vector<Segment> segments);

  DensityKind kind() const { return kind_; }
  Analyticity analyticity() const;
  TailClass tail() const;
  int tail_order() const { return kind_ == DensityKind::lorentzian ? 2 : 0; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  const std::vector<GaussianComponent>& components() const { return components_; }
  const std::vector<Segment>& segments() const { return segments_; }
  double lorentz_scale() const { return gamma_; }

  // Sorted segment endpoints (piecewise kinds only).
  std::vector<double> breakpoints() const;
  // Smallest interval outside of which the density is below 1e-16 of its
  // peak (compact kinds: the exact support).
  std::pair<double, double> effective_support() const;
  double support_radius() const;
  double total_mass() const;
  double peak() const;
  bool is_even() const;
  bool is_unimodal() const;
  // Complex poles of the continuation (lorentzian only).
  std::vector<Complex> poles() const;

  double cdf(double omega) const;
  double quantile(double p) const;

 private:
  DensityKind kind_ = DensityKind::gaussian;
  std::string name_;
  std::vector<GaussianComponent> components_;
  std::vector<Segment> segments_;
  double gamma_ = 1.0;
};

// Density on the real axis. Zero outside the support of piecewise kinds.
double eval(const SpectralDensity& g, double omega);

// Analytic continuation of the density off the real axis.
// Throws UnsupportedContinuation for piecewise kinds, PoleHit near a pole.
Complex eval_continuation(const SpectralDensity& g, Complex z);

enum class DerivativeMethod { closed_form, finite_difference };

struct DerivativeValue {
  Complex value;
  DerivativeMethod method;
};

// Derivative of the density (order 1 or 2). Closed form where the kind
// allows it; for piecewise kinds a central difference on the real axis.
DerivativeValue derivative(const SpectralDensity& g, Complex z, int order = 1);

enum class QuadratureScheme {
  automatic,   // Gauss-Hermite, double-exponential or per-segment Gauss-Legendre
  equispaced,  // uniform spacing (in asinh(w / 4 gamma) for the Lorentzian)
  quantile,    // equal-mass midpoints of the distribution function
};

enum class QuadratureDomain { full_line, per_segment };

// Weights already include the density: sum_m w_m f(x_m) ~ integral of f g.
struct QuadratureRule {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;
  QuadratureDomain domain = QuadratureDomain::full_line;
  QuadratureScheme scheme = QuadratureScheme::automatic;

  Eigen::Index size() const { return nodes.size(); }
  template <class F>
  auto integrate(F&& f) const {
    decltype(f(0.0)) s{};
    for (Eigen::Index m = 0; m < nodes.size(); ++m) s += weights[m] * f(nodes[m]);
    return s;
  }
};

QuadratureRule make_quadrature(const SpectralDensity& g, int resolution,
                               QuadratureScheme scheme = QuadratureScheme::automatic);

// Gauss-Hermite (probabilists') nodes and weights summing to one.
std::pair<Eigen::ArrayXd, Eigen::ArrayXd> gauss_hermite(int n);
// Gauss-Legendre on [-1, 1].
std::pair<Eigen::ArrayXd, Eigen::ArrayXd> gauss_legendre(int n);

// Named densities used throughout the tests and the command line.
namespace builtin {
SpectralDensity standard_gaussian();
SpectralDensity standard_lorentzian();
// 1 on [-1, -1/2], 1/2 on [1/4, 5/4].
SpectralDensity two_step();
// Two tent functions of height 2 centred at -3/4 and 3/4, half-width 1/4.
SpectralDensity twin_peaks();
// Plateaus and ramps on [-3, 3]; left unnormalized (mass 27.9).
SpectralDensity plateau_ramps();
}  // namespace builtin

// Build a density from a kind name and flat parameter list, as found in
// configuration files. Throws ConfigError on malformed input.
SpectralDensity density_from_spec(const std::string& kind, const std::vector<double>& params);
// Canonical textual form, used in output metadata.
std::string describe(const SpectralDensity& g);

}  // namespace kuramoto
