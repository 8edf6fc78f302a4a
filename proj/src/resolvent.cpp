#include "kuramoto/resolvent.hpp"

#include <cmath>
#include <numbers>

#include "kuramoto/faddeeva.hpp"

namespace kuramoto {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex I(0, 1);

// Standard-normal continued resolvent S(u) = sqrt(pi/2) w(i u / sqrt 2),
// entire in u; S'(u) = u S(u) - 1.
Complex std_gauss_F(Complex u) { return std::sqrt(kPi / 2) * faddeeva_w(I * u / std::sqrt(2.0)); }

Jet gaussian_jet(const SpectralDensity& g, Complex lambda) {
  Jet j{0, 0};
  for (const auto& c : g.components()) {
    Complex u = (lambda - I * c.mean) / c.sigma;
    Complex s = std_gauss_F(u);
    j.value += c.weight / c.sigma * s;
    j.derivative += c.weight / (c.sigma * c.sigma) * (u * s - 1.0);
  }
  return j;
}

// Logarithm continuous over the half-plane Re u < 0 (principal otherwise).
Complex log_branch(Complex u, bool left) {
  if (left) return std::log(-u) + I * kPi;
  return std::log(u);
}

// First-sheet D and D' for piecewise-linear densities. Valid for any
// lambda off the support segment on the imaginary axis.
Jet piecewise_jet(const SpectralDensity& g, Complex lambda) {
  const bool left = lambda.real() < 0;
  Jet j{0, 0};
  for (const auto& s : g.segments()) {
    double beta = s.slope();
    double alpha = s.value_a - beta * s.a;
    Complex ua = lambda - I * s.a, ub = lambda - I * s.b;
    if (ua == 0.0 || ub == 0.0) fail(ErrorKind::breakpoint_hit, "resolvent evaluated on a segment endpoint");
    Complex dL = log_branch(ub, left) - log_branch(ua, left);
    Complex c = I * alpha + beta * lambda;
    j.value += c * dL + I * beta * (s.b - s.a);
    j.derivative += beta * dL + c * (1.0 / ub - 1.0 / ua);
  }
  return j;
}

void check_lorentz_pole(const SpectralDensity& g, Complex lambda) {
  double gm = g.lorentz_scale();
  if (std::abs(lambda + gm) < 1e-12 * std::max(1.0, gm))
    fail(ErrorKind::pole_hit, "continued resolvent evaluated at its pole");
}

// First-sheet D in closed form.
Jet first_sheet_jet(const SpectralDensity& g, Complex lambda) {
  switch (g.kind()) {
    case DensityKind::gaussian:
    case DensityKind::gaussian_mixture: {
      Jet j = gaussian_jet(g, lambda);
      if (lambda.real() < 0) {
        Complex z = -I * lambda;
        j.value -= 2 * kPi * eval_continuation(g, z);
        j.derivative -= 2 * kPi * (-I) * derivative(g, z, 1).value;
      }
      return j;
    }
    case DensityKind::lorentzian: {
      double gm = g.lorentz_scale();
      Complex d = lambda.real() < 0 ? lambda - gm : lambda + gm;
      if (std::abs(d) < 1e-12 * std::max(1.0, gm)) fail(ErrorKind::pole_hit, "resolvent evaluated at its pole");
      return {1.0 / d, -1.0 / (d * d)};
    }
    default: return piecewise_jet(g, lambda);
  }
}

}  // namespace

ResolventValue resolvent_D(const SpectralDensity& /*g*/, Complex lambda, const QuadratureRule& rule) {
  if (lambda.real() == 0.0) fail(ErrorKind::invalid_argument, "resolvent_D needs Re lambda != 0");
  Complex s = rule.integrate([&](double w) { return Complex(1.0) / (lambda - I * w); });
  return {lambda, s, lambda.real() > 0 ? Sheet::first : Sheet::second, ResolventMethod::quadrature};
}

ResolventValue resolvent_D(const SpectralDensity& g, Complex lambda) {
  if (lambda.real() == 0.0) fail(ErrorKind::invalid_argument, "resolvent_D needs Re lambda != 0");
  return {lambda, first_sheet_jet(g, lambda).value, lambda.real() > 0 ? Sheet::first : Sheet::second,
          ResolventMethod::closed_form};
}

ResolventValue resolvent_D_converged(const SpectralDensity& g, Complex lambda, int resolution, double tol,
                                     int max_doublings) {
  auto prev = resolvent_D(g, lambda, make_quadrature(g, resolution));
  for (int k = 0; k < max_doublings; ++k) {
    resolution *= 2;
    auto next = resolvent_D(g, lambda, make_quadrature(g, resolution));
    if (std::abs(next.value - prev.value) <= tol * std::max(1.0, std::abs(next.value))) return next;
    prev = next;
  }
  fail(ErrorKind::quadrature_divergence, "resolvent quadrature did not settle under resolution doubling");
}

double hilbert_transform(const SpectralDensity& g, double y) {
  if (g.tail() == TailClass::compact_support) {
    // Closed form: sum over breakpoints of (jump of linear extensions at y)
    // times log|y - p|, minus the slope terms.
    const auto& segs = g.segments();
    double s = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto& seg = segs[i];
      s -= seg.slope() * (seg.b - seg.a);
      // Contribution at the left end a: +extend(y) log|y - a|.
      for (int side = 0; side < 2; ++side) {
        double p = side == 0 ? seg.a : seg.b;
        double coef = side == 0 ? seg.extend(y) : -seg.extend(y);
        // Merge with the neighbour sharing this endpoint so that continuous
        // joins cancel exactly.
        if (side == 0 && i > 0 && segs[i - 1].b == p) continue;
        if (side == 1 && i + 1 < segs.size() && segs[i + 1].a == p) coef += segs[i + 1].extend(y);
        if (y == p) {
          if (std::abs(coef) > 1e-14 * std::max(1.0, g.peak()))
            fail(ErrorKind::breakpoint_hit, "Hilbert transform at a jump of the density");
          continue;
        }
        if (std::abs(y - p) < 1e-12 && std::abs(coef) > 1e-10)
          fail(ErrorKind::breakpoint_hit, "Hilbert transform at a jump of the density");
        s += coef * std::log(std::abs(y - p));
      }
    }
    return s / kPi;
  }
  // Symmetrized principal value: (1/pi) int_0^inf (g(y - t) - g(y + t)) / t dt.
  auto integrand = [&](double t) { return (eval(g, y - t) - eval(g, y + t)) / t; };
  static const auto gl = gauss_legendre(16);
  auto panel = [&](double a, double b) {
    double s = 0, h = 0.5 * (b - a), m = 0.5 * (a + b);
    for (int k = 0; k < 16; ++k) s += gl.second[k] * integrand(m + h * gl.first[k]);
    return s * h;
  };
  double width, reach;
  if (g.kind() == DensityKind::lorentzian) {
    width = 0.5 * g.lorentz_scale();
    reach = std::abs(y) + 20 * g.lorentz_scale();
  } else {
    double smin = INFINITY, far = 0;
    for (const auto& c : g.components()) {
      smin = std::min(smin, c.sigma);
      far = std::max(far, std::abs(y - c.mean) + 9 * c.sigma);
    }
    width = 0.5 * smin;
    reach = far;
  }
  double s = 0, t = 0;
  int n = int(std::ceil(reach / width));
  for (int k = 0; k < n; ++k, t += width) s += panel(t, t + width);
  if (g.tail() == TailClass::algebraic) {
    for (double a = t; a < 1e18; a *= 2) s += panel(a, 2 * a);
  }
  return s / kPi;
}

Complex boundary_value(const SpectralDensity& g, double y) {
  double v = hilbert_transform(g, y);
  return kPi * eval(g, y) - I * kPi * v;
}

ResolventValue continued_resolvent_F(const SpectralDensity& g, Complex lambda) {
  if (g.analyticity() == Analyticity::real_axis_only) {
    if (lambda.real() < 0) fail(ErrorKind::unsupported_continuation, "piecewise density has no continuation past the axis");
    if (lambda.real() == 0) return {lambda, boundary_value(g, lambda.imag()), Sheet::boundary, ResolventMethod::boundary};
  }
  if (g.kind() == DensityKind::lorentzian) check_lorentz_pole(g, lambda);
  Sheet sheet = lambda.real() > 0 ? Sheet::first : lambda.real() < 0 ? Sheet::second : Sheet::boundary;
  return {lambda, continued_resolvent_jet(g, lambda).value, sheet, ResolventMethod::closed_form};
}

ResolventValue continued_resolvent_F(const SpectralDensity& g, Complex lambda, const QuadratureRule& rule) {
  if (std::abs(lambda.real()) < 1e-4)
    return {lambda, boundary_value(g, lambda.imag()), Sheet::boundary, ResolventMethod::boundary};
  if (lambda.real() > 0) return resolvent_D(g, lambda, rule);
  if (g.analyticity() == Analyticity::real_axis_only)
    fail(ErrorKind::unsupported_continuation, "piecewise density has no continuation past the axis");
  auto d = resolvent_D(g, lambda, rule);
  d.value += 2 * kPi * eval_continuation(g, -I * lambda);
  return d;
}

Jet continued_resolvent_jet(const SpectralDensity& g, Complex lambda) {
  switch (g.kind()) {
    case DensityKind::gaussian:
    case DensityKind::gaussian_mixture: return gaussian_jet(g, lambda);
    case DensityKind::lorentzian: {
      check_lorentz_pole(g, lambda);
      Complex d = lambda + g.lorentz_scale();
      return {1.0 / d, -1.0 / (d * d)};
    }
    default:
      if (lambda.real() < 0) fail(ErrorKind::unsupported_continuation, "piecewise density has no continuation past the axis");
      return piecewise_jet(g, lambda);
  }
}

Complex characteristic_G(const SpectralDensity& g, double K, Complex lambda) {
  return 1.0 - 0.5 * K * continued_resolvent_F(g, lambda).value;
}

Complex characteristic_G(const SpectralDensity& g, double K, Complex lambda, const QuadratureRule& rule) {
  return 1.0 - 0.5 * K * continued_resolvent_F(g, lambda, rule).value;
}

Jet characteristic_jet(const SpectralDensity& g, double K, Complex lambda) {
  Jet f = continued_resolvent_jet(g, lambda);
  return {1.0 - 0.5 * K * f.value, -0.5 * K * f.derivative};
}

}  // namespace kuramoto
