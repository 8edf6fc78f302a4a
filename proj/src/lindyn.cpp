#include "kuramoto/lindyn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "etd.hpp"
#include "kuramoto/faddeeva.hpp"

namespace kuramoto {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex I(0, 1);

Complex std_gauss_F(Complex u) { return std::sqrt(kPi / 2) * faddeeva_w(I * u / std::sqrt(2.0)); }

Complex F_of(const SpectralDensity& g, Complex lambda) { return continued_resolvent_jet(g, lambda).value; }

// Pairing of one profile term, closed form.
Complex pair_term(const SpectralDensity& g, Complex lambda, const InitialFunction::Term& t) {
  switch (t.kind) {
    case InitialFunction::Kind::constant_one: return t.amplitude * F_of(g, lambda);
    case InitialFunction::Kind::rational_profile: {
      double c = t.param;
      if (std::abs(lambda - c) < 1e-7 * std::max(1.0, c))
        return -t.amplitude * c * continued_resolvent_jet(g, Complex(c, 0)).derivative;
      return t.amplitude * c / (lambda - c) * (F_of(g, Complex(c, 0)) - F_of(g, lambda));
    }
    case InitialFunction::Kind::exp_profile: {
      double beta = t.param;
      switch (g.kind()) {
        case DensityKind::gaussian:
        case DensityKind::gaussian_mixture: {
          Complex s = 0;
          for (const auto& c : g.components()) {
            Complex u = (lambda - I * c.mean) / c.sigma;
            double b = beta * c.sigma;
            s += c.weight / c.sigma * std::exp(I * beta * c.mean - 0.5 * b * b) * std_gauss_F(u + b);
          }
          return t.amplitude * s;
        }
        case DensityKind::lorentzian: {
          double gm = g.lorentz_scale();
          return t.amplitude * std::exp(-gm * beta) * F_of(g, lambda);
        }
        default:
          fail(ErrorKind::unsupported_continuation, "exponential profile pairing needs an analytic density");
      }
    }
  }
  return 0;
}

// Leading asymptotics Q ~ A / lambda + m1 / lambda^2 for one term.
std::pair<Complex, Complex> term_moments(const SpectralDensity& g, const InitialFunction::Term& t) {
  auto density_first_moment = [&]() -> Complex {
    if (g.kind() == DensityKind::lorentzian) return -g.lorentz_scale();
    Complex m = 0;
    for (const auto& c : g.components()) m += I * c.mean * c.weight;
    return m;
  };
  switch (t.kind) {
    case InitialFunction::Kind::constant_one:
      return {t.amplitude * g.total_mass(), t.amplitude * density_first_moment()};
    case InitialFunction::Kind::rational_profile: {
      double c = t.param;
      Complex Fc = F_of(g, Complex(c, 0));
      return {t.amplitude * c * Fc, t.amplitude * (c * c * Fc - c * g.total_mass())};
    }
    case InitialFunction::Kind::exp_profile: {
      double beta = t.param;
      if (g.kind() == DensityKind::lorentzian) {
        double gm = g.lorentz_scale();
        Complex A = t.amplitude * std::exp(-gm * beta);
        return {A, -gm * A};
      }
      Complex A = 0, m1 = 0;
      for (const auto& c : g.components()) {
        Complex a = c.weight * std::exp(I * beta * c.mean - 0.5 * beta * beta * c.sigma * c.sigma);
        A += a;
        m1 += (I * c.mean - beta * c.sigma * c.sigma) * a;
      }
      return {t.amplitude * A, t.amplitude * m1};
    }
  }
  return {0, 0};
}

}  // namespace

InitialFunction InitialFunction::constant_one(Complex amplitude) {
  InitialFunction f;
  f.terms_.push_back({Kind::constant_one, amplitude, 0.0});
  return f;
}

InitialFunction InitialFunction::exp_profile(double beta, Complex amplitude) {
  if (!(beta >= 0)) fail(ErrorKind::invalid_argument, "exp_profile needs beta >= 0");
  InitialFunction f;
  f.terms_.push_back({Kind::exp_profile, amplitude, beta});
  return f;
}

InitialFunction InitialFunction::rational_profile(double c, Complex amplitude) {
  if (!(c > 0)) fail(ErrorKind::invalid_argument, "rational_profile needs c > 0");
  InitialFunction f;
  f.terms_.push_back({Kind::rational_profile, amplitude, c});
  return f;
}

InitialFunction InitialFunction::operator+(const InitialFunction& other) const {
  InitialFunction f = *this;
  f.terms_.insert(f.terms_.end(), other.terms_.begin(), other.terms_.end());
  return f;
}

InitialFunction InitialFunction::scaled(Complex s) const {
  InitialFunction f = *this;
  for (auto& t : f.terms_) t.amplitude *= s;
  return f;
}

Complex InitialFunction::operator()(double omega) const { return at(Complex(omega, 0)); }

Complex InitialFunction::at(Complex z) const {
  Complex s = 0;
  for (const auto& t : terms_) {
    switch (t.kind) {
      case Kind::constant_one: s += t.amplitude; break;
      case Kind::exp_profile: s += t.amplitude * std::exp(I * t.param * z); break;
      case Kind::rational_profile: s += t.amplitude * t.param / (t.param - I * z); break;
    }
  }
  return s;
}

std::string to_string(EtaSource s) {
  switch (s) {
    case EtaSource::residue_prediction: return "residue_prediction";
    case EtaSource::direct_integration: return "direct_integration";
    case EtaSource::finite_N: return "finite_N";
    default: return "galerkin";
  }
}

Complex pairing_Q(const SpectralDensity& g, Complex lambda, const InitialFunction& phi) {
  if (g.analyticity() == Analyticity::real_axis_only && lambda.real() <= 0)
    fail(ErrorKind::unsupported_continuation, "piecewise density has no continuation past the axis");
  Complex s = 0;
  for (const auto& t : phi.terms()) s += pair_term(g, lambda, t);
  return s;
}

Complex pairing_Q(const SpectralDensity& /*g*/, Complex lambda, const InitialFunction& phi, const QuadratureRule& rule) {
  if (lambda.real() <= 0) fail(ErrorKind::invalid_argument, "quadrature pairing needs Re lambda > 0");
  return rule.integrate([&](double w) { return phi(w) / (lambda - I * w); });
}

EtaTrajectory predict_eta(const SpectralDensity& g, double K, const InitialFunction& phi,
                          const std::vector<double>& times, PredictOptions opt, PredictionDetail* detail) {
  if (g.analyticity() == Analyticity::real_axis_only)
    fail(ErrorKind::unsupported_continuation, "residue prediction needs an analytic density");
  if (!(opt.strip_depth > 0)) fail(ErrorKind::invalid_argument, "strip depth must be positive");
  const bool rational = g.analyticity() == Analyticity::rational;
  const double reach = g.total_mass() * K / 2 + 1;

  // Pick the strip depth so that no root of G (nor, for the Lorentzian, the
  // pole of F) sits within 2% of the line Re lambda = -a.
  double a = opt.strip_depth;
  RootSearchResult found;
  for (int attempt = 0;; ++attempt) {
    double im;
    if (rational) {
      im = 5 + K;
    } else {
      double mu = 0, sg = 0;
      for (const auto& c : g.components()) mu = std::max(mu, std::abs(c.mean)), sg = std::max(sg, c.sigma);
      im = mu + sg * (a + 3) + 1;
    }
    double depth = rational ? std::max(1.1 * a, 2 * g.lorentz_scale() + K + 5) : 1.1 * a;
    found = find_roots(g, K, Window{-depth, reach, -im, im});
    double margin = 0.02 * a;
    bool clash = std::any_of(found.roots.begin(), found.roots.end(),
                             [&](const SpectralRoot& r) { return std::abs(r.lambda.real() + a) < margin; });
    if (rational && std::abs(g.lorentz_scale() - a) < margin) clash = true;
    if (!clash) break;
    if (attempt >= 10) fail(ErrorKind::pole_on_strip_boundary, "could not move the strip boundary off a pole");
    a *= 1.05;
  }

  std::vector<SpectralRoot> poles;
  for (const auto& r : found.roots) {
    if (!rational && r.lambda.real() <= -a) continue;
    if (r.multiplicity > 1) fail(ErrorKind::invalid_argument, "higher-order pole in residue sum");
    poles.push_back(r);
  }
  std::vector<Complex> coef;
  for (const auto& r : poles) coef.push_back(pairing_Q(g, r.lambda, phi) / r.residue);

  EtaTrajectory out;
  out.source = EtaSource::residue_prediction;
  out.times = times;
  out.values.assign(times.size(), 0.0);
  for (std::size_t i = 0; i < times.size(); ++i)
    for (std::size_t n = 0; n < poles.size(); ++n) out.values[i] += coef[n] * std::exp(poles[n].lambda * times[i]);

  if (!rational && opt.include_remainder) {
    Complex A = 0, m1 = 0;
    for (const auto& t : phi.terms()) {
      auto [a0, a1] = term_moments(g, t);
      A += a0, m1 += a1;
    }
    Complex B = m1 + 0.5 * K * g.total_mass() * A;
    double t_max = times.empty() ? 1.0 : std::max(1.0, *std::max_element(times.begin(), times.end()));
    const double base = std::min(0.5, kPi / t_max);
    // Panels shrink near roots lying close to the line.
    auto width_at = [&](double y) {
      double d = INFINITY;
      for (const auto& r : found.roots) d = std::min(d, std::abs(Complex(-a, y) - r.lambda));
      return std::min(base, std::max(0.25 * d, 1e-6));
    };
    static const auto gl = gauss_legendre(8);
    std::vector<double> ys, ws;
    std::vector<Complex> vals;
    for (double lo = -opt.y_max; lo < opt.y_max;) {
      double width = std::min(width_at(lo), opt.y_max - lo);
      width = std::min(width, width_at(lo + width));
      for (int k = 0; k < 8; ++k) {
        double y = lo + 0.5 * width * (gl.first[k] + 1);
        Complex lam(-a, y);
        Complex F1 = pairing_Q(g, lam, phi) / characteristic_G(g, K, lam);
        ys.push_back(y);
        ws.push_back(0.5 * width * gl.second[k]);
        vals.push_back(F1 - A / lam - B / (lam * lam));
      }
      lo += width;
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
      double t = times[i];
      Complex s = 0;
      for (std::size_t k = 0; k < ys.size(); ++k) s += ws[k] * vals[k] * std::exp(Complex(0, ys[k] * t));
      out.values[i] += std::exp(-a * t) / (2 * kPi) * s;
    }
  }
  std::ostringstream os;
  os.precision(17);
  os << a;
  out.metadata["K"] = std::to_string(K);
  out.metadata["density"] = describe(g);
  out.metadata["strip_depth"] = os.str();
  out.metadata["poles"] = std::to_string(poles.size());
  if (detail) *detail = {poles, a};
  return out;
}

EtaTrajectory direct_integration(const SpectralDensity& g, double K, const InitialFunction& phi,
                                 const std::vector<double>& times, const QuadratureRule& rule, double dt) {
  if (!(dt > 0) || dt > 0.5 / std::max(1.0, K)) fail(ErrorKind::step_too_large, "dt must satisfy dt <= 0.5/max(1,K)");
  const Eigen::Index M = rule.size();
  Eigen::ArrayXcd Z(M);
  for (Eigen::Index m = 0; m < M; ++m) Z[m] = phi(rule.nodes[m]);
  const Eigen::ArrayXd& w = rule.weights;
  auto eta = [&](const Eigen::ArrayXcd& z) { return (w * z).sum(); };

  EtaTrajectory out;
  out.source = EtaSource::direct_integration;
  double t = 0;
  detail::EtdCoefficients c;
  double cached_h = -1;
  const Eigen::ArrayXXcd L = Complex(0, 1) * rule.nodes.cast<Complex>();
  for (double target : times) {
    if (target < t - 1e-14) fail(ErrorKind::invalid_argument, "times must be increasing and non-negative");
    int n = int(std::ceil((target - t) / dt - 1e-9));
    if (n > 0) {
      double h = (target - t) / n;
      if (std::abs(h - cached_h) > 1e-12 * h) {
        c = detail::etd_coefficients(L, h);
        cached_h = h;
      }
      // Exponential RK4; the forcing (K/2) eta is the same on every node.
      const double k = 0.5 * K;
      for (int s = 0; s < n; ++s) {
        Complex Nu = k * eta(Z);
        Eigen::ArrayXcd a = c.E2 * Z + c.Q * Nu;
        Complex Na = k * eta(a);
        Eigen::ArrayXcd b = c.E2 * Z + c.Q * Na;
        Complex Nb = k * eta(b);
        Eigen::ArrayXcd cc = c.E2 * a + c.Q * (2.0 * Nb - Nu);
        Complex Nc = k * eta(cc);
        Z = c.E * Z + c.f1 * Nu + 2.0 * c.f2 * (Na + Nb) + c.f3 * Nc;
      }
      t = target;
    }
    out.times.push_back(target);
    out.values.push_back(eta(Z));
  }
  out.metadata["K"] = std::to_string(K);
  out.metadata["density"] = describe(g);
  out.metadata["nodes"] = std::to_string(M);
  return out;
}

double log_slope(const EtaTrajectory& traj, double t0, double t1) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    double t = traj.times[i];
    if (t < t0 || t > t1) continue;
    double y = std::log(std::abs(traj.values[i]));
    sx += t, sy += y, sxx += t * t, sxy += t * y, ++n;
  }
  if (n < 2) fail(ErrorKind::invalid_argument, "log_slope needs at least two samples in range");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(std::size_t(std::max(n, 1)));
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace kuramoto
