#include "kuramoto/density.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

namespace kuramoto {
namespace {

constexpr double kPi = std::numbers::pi;
// Half-width, in standard deviations, beyond which a gaussian is below 1e-16
// of its peak.
const double kGaussCut = std::sqrt(2.0 * std::log(1e16));

void require(bool ok, const std::string& msg) {
  if (!ok) fail(ErrorKind::invalid_argument, msg);
}

void validate_segments(const std::vector<Segment>& segs) {
  require(!segs.empty(), "piecewise density needs at least one segment");
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    require(std::isfinite(s.a) && std::isfinite(s.b) && s.a < s.b, "segment endpoints must satisfy a < b");
    require(s.value_a >= 0 && s.value_b >= 0, "density values must be non-negative");
    if (i > 0) require(segs[i - 1].b <= s.a, "segments must be sorted and non-overlapping");
  }
}

double gauss_pdf(double x, double mean, double sigma) {
  double u = (x - mean) / sigma;
  return std::exp(-0.5 * u * u) / (sigma * std::sqrt(2 * kPi));
}

// Index of the segment containing omega (right-continuous), or -1.
int find_segment(const std::vector<Segment>& segs, double omega) {
  for (std::size_t i = 0; i < segs.size(); ++i) {
    bool last = i + 1 == segs.size() || segs[i + 1].a > segs[i].b;
    if (omega >= segs[i].a && (omega < segs[i].b || (last && omega == segs[i].b))) return int(i);
  }
  return -1;
}

double bisect_quantile(const SpectralDensity& g, double target, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
    double mid = 0.5 * (lo + hi);
    (g.cdf(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

SpectralDensity SpectralDensity::gaussian(double mean, double sigma) {
  require(std::isfinite(mean) && sigma > 0, "gaussian needs sigma > 0");
  SpectralDensity g;
  g.kind_ = DensityKind::gaussian;
  g.components_ = {{1.0, mean, sigma}};
  g.name_ = "gaussian";
  return g;
}

SpectralDensity SpectralDensity::lorentzian(double scale) {
  require(scale > 0 && std::isfinite(scale), "lorentzian needs scale > 0");
  SpectralDensity g;
  g.kind_ = DensityKind::lorentzian;
  g.gamma_ = scale;
  g.name_ = "lorentzian";
  return g;
}

SpectralDensity SpectralDensity::gaussian_mixture(std::vector<GaussianComponent> components) {
  require(!components.empty(), "mixture needs at least one component");
  for (const auto& c : components)
    require(c.weight > 0 && c.sigma > 0 && std::isfinite(c.mean), "mixture components need weight > 0, sigma > 0");
  SpectralDensity g;
  g.kind_ = DensityKind::gaussian_mixture;
  g.components_ = std::move(components);
  g.name_ = "gaussian-mixture";
  return g;
}

SpectralDensity SpectralDensity::piecewise_constant(const std::vector<std::array<double, 3>>& pieces) {
  std::vector<Segment> segs;
  for (const auto& p : pieces) segs.push_back({p[0], p[1], p[2], p[2]});
  validate_segments(segs);
  SpectralDensity g;
  g.kind_ = DensityKind::piecewise_constant;
  g.segments_ = std::move(segs);
  g.name_ = "piecewise-constant";
  return g;
}

SpectralDensity SpectralDensity::piecewise_linear(std::vector<Segment> segments) {
  validate_segments(segments);
  SpectralDensity g;
  g.kind_ = DensityKind::piecewise_linear;
  g.segments_ = std::move(segments);
  g.name_ = "piecewise-linear";
  return g;
}

Analyticity SpectralDensity::analyticity() const {
  switch (kind_) {
    case DensityKind::gaussian:
    case DensityKind::gaussian_mixture: return Analyticity::entire_type;
    case DensityKind::lorentzian: return Analyticity::rational;
    default: return Analyticity::real_axis_only;
  }
}

TailClass SpectralDensity::tail() const {
  switch (kind_) {
    case DensityKind::gaussian:
    case DensityKind::gaussian_mixture: return TailClass::super_exponential;
    case DensityKind::lorentzian: return TailClass::algebraic;
    default: return TailClass::compact_support;
  }
}

std::vector<double> SpectralDensity::breakpoints() const {
  std::vector<double> bp;
  for (const auto& s : segments_) {
    if (bp.empty() || bp.back() != s.a) bp.push_back(s.a);
    bp.push_back(s.b);
  }
  return bp;
}

std::pair<double, double> SpectralDensity::effective_support() const {
  switch (kind_) {
    case DensityKind::gaussian:
    case DensityKind::gaussian_mixture: {
      double lo = INFINITY, hi = -INFINITY;
      for (const auto& c : components_) {
        lo = std::min(lo, c.mean - kGaussCut * c.sigma);
        hi = std::max(hi, c.mean + kGaussCut * c.sigma);
      }
      return {lo, hi};
    }
    case DensityKind::lorentzian: return {-1e8 * gamma_, 1e8 * gamma_};
    default: return {segments_.front().a, segments_.back().b};
  }
}

double SpectralDensity::support_radius() const {
  auto [lo, hi] = effective_support();
  return std::max(std::abs(lo), std::abs(hi));
}

double SpectralDensity::total_mass() const {
  switch (kind_) {
    case DensityKind::gaussian:
    case DensityKind::gaussian_mixture: {
      double m = 0;
      for (const auto& c : components_) m += c.weight;
      return m;
    }
    case DensityKind::lorentzian: return 1.0;
    default: {
      double m = 0;
      for (const auto& s : segments_) m += 0.5 * (s.b - s.a) * (s.value_a + s.value_b);
      return m;
    }
  }
}

double SpectralDensity::peak() const {
  switch (kind_) {
    case DensityKind::lorentzian: return 1.0 / (kPi * gamma_);
    case DensityKind::gaussian:
    case DensityKind::gaussian_mixture: {
      double p = 0;
      for (const auto& c : components_) p = std::max(p, eval(*this, c.mean));
      return p;
    }
    default: {
      double p = 0;
      for (const auto& s : segments_) p = std::max({p, s.value_a, s.value_b});
      return p;
    }
  }
}

bool SpectralDensity::is_even() const {
  switch (kind_) {
    case DensityKind::lorentzian: return true;
    case DensityKind::gaussian: return components_[0].mean == 0.0;
    case DensityKind::gaussian_mixture: {
      for (const auto& c : components_) {
        bool mirrored = std::any_of(components_.begin(), components_.end(), [&](const GaussianComponent& d) {
          return std::abs(d.mean + c.mean) < 1e-14 && d.sigma == c.sigma && d.weight == c.weight;
        });
        if (!mirrored) return false;
      }
      return true;
    }
    default: {
      auto bp = breakpoints();
      for (std::size_t i = 0; i < bp.size(); ++i)
        if (std::abs(bp[i] + bp[bp.size() - 1 - i]) > 1e-12) return false;
      for (const auto& s : segments_) {
        for (double x : {s.a + 0.25 * (s.b - s.a), s.a + 0.5 * (s.b - s.a), s.a + 0.75 * (s.b - s.a)})
          if (std::abs(eval(*this, x) - eval(*this, -x)) > 1e-12) return false;
      }
      return true;
    }
  }
}

bool SpectralDensity::is_unimodal() const {
  if (kind_ == DensityKind::gaussian || kind_ == DensityKind::lorentzian) return true;
  auto [lo, hi] = effective_support();
  const int n = 4000;
  bool falling = false;
  double prev = eval(*this, lo);
  for (int i = 1; i <= n; ++i) {
    double v = eval(*this, lo + (hi - lo) * i / n);
    double tol = 1e-12 * std::max(1.0, std::abs(prev));
    if (v < prev - tol) falling = true;
    if (v > prev + tol && falling) return false;
    prev = v;
  }
  return true;
}

std::vector<Complex> SpectralDensity::poles() const {
  if (kind_ == DensityKind::lorentzian) return {Complex(0, gamma_), Complex(0, -gamma_)};
  return {};
}

double SpectralDensity::cdf(double x) const {
  switch (kind_) {
    case DensityKind::gaussian:
    case DensityKind::gaussian_mixture: {
      double s = 0;
      for (const auto& c : components_) s += c.weight * 0.5 * std::erfc(-(x - c.mean) / (c.sigma * std::sqrt(2.0)));
      return s;
    }
    case DensityKind::lorentzian: return 0.5 + std::atan(x / gamma_) / kPi;
    default: {
      double s = 0;
      for (const auto& seg : segments_) {
        if (x <= seg.a) break;
        double r = std::min(x, seg.b);
        s += 0.5 * (r - seg.a) * (seg.value_a + seg.extend(r));
      }
      return s;
    }
  }
}

double SpectralDensity::quantile(double p) const {
  require(p > 0 && p < 1, "quantile needs 0 < p < 1");
  if (kind_ == DensityKind::lorentzian) return gamma_ * std::tan(kPi * (p - 0.5));
  if (kind_ == DensityKind::gaussian) {
    const auto& c = components_[0];
    double z = p < 0.5 ? -std::sqrt(2.0) * boost::math::erfc_inv(2 * p) : std::sqrt(2.0) * boost::math::erfc_inv(2 * (1 - p));
    return c.mean + c.sigma * z;
  }
  auto [lo, hi] = effective_support();
  return bisect_quantile(*this, p * total_mass(), lo, hi);
}

double eval(const SpectralDensity& g, double omega) {
  switch (g.kind()) {
    case DensityKind::gaussian:
    case DensityKind::gaussian_mixture: {
      double s = 0;
      for (const auto& c : g.components()) s += c.weight * gauss_pdf(omega, c.mean, c.sigma);
      return s;
    }
    case DensityKind::lorentzian: {
      double gm = g.lorentz_scale();
      return gm / (kPi * (gm * gm + omega * omega));
    }
    default: {
      int i = find_segment(g.segments(), omega);
      return i < 0 ? 0.0 : g.segments()[i].extend(omega);
    }
  }
}

Complex eval_continuation(const SpectralDensity& g, Complex z) {
  switch (g.kind()) {
    case DensityKind::gaussian:
    case DensityKind::gaussian_mixture: {
      Complex s = 0;
      for (const auto& c : g.components()) {
        Complex u = (z - c.mean) / c.sigma;
        s += c.weight * std::exp(-0.5 * u * u) / (c.sigma * std::sqrt(2 * kPi));
      }
      return s;
    }
    case DensityKind::lorentzian: {
      double gm = g.lorentz_scale();
      for (Complex p : g.poles())
        if (std::abs(z - p) < 1e-12 * std::max(1.0, gm)) fail(ErrorKind::pole_hit, "evaluation at a pole of the density");
      return gm / (kPi * (gm * gm + z * z));
    }
    default:
      if (z.imag() != 0.0) fail(ErrorKind::unsupported_continuation, "piecewise density has no continuation off the real axis");
      return eval(g, z.real());
  }
}

DerivativeValue derivative(const SpectralDensity& g, Complex z, int order) {
  require(order == 1 || order == 2, "derivative order must be 1 or 2");
  switch (g.kind()) {
    case DensityKind::gaussian:
    case DensityKind::gaussian_mixture: {
      Complex s = 0;
      for (const auto& c : g.components()) {
        Complex u = (z - c.mean) / c.sigma;
        Complex pdf = c.weight * std::exp(-0.5 * u * u) / (c.sigma * std::sqrt(2 * kPi));
        s += order == 1 ? -u / c.sigma * pdf : (u * u - 1.0) / (c.sigma * c.sigma) * pdf;
      }
      return {s, DerivativeMethod::closed_form};
    }
    case DensityKind::lorentzian: {
      double gm = g.lorentz_scale();
      eval_continuation(g, z);  // pole check
      Complex q = gm * gm + z * z;
      Complex v = order == 1 ? -(gm / kPi) * 2.0 * z / (q * q) : (gm / kPi) * (6.0 * z * z - 2 * gm * gm) / (q * q * q);
      return {v, DerivativeMethod::closed_form};
    }
    default: {
      if (z.imag() != 0.0) fail(ErrorKind::unsupported_continuation, "piecewise density has no continuation off the real axis");
      double x = z.real();
      double h = (order == 1 ? 1e-5 : 1e-3) * std::max(1.0, std::abs(x));
      for (double b : g.breakpoints())
        if (std::abs(x - b) <= 2 * h) fail(ErrorKind::breakpoint_hit, "derivative requested at a segment boundary");
      double v = order == 1 ? (eval(g, x + h) - eval(g, x - h)) / (2 * h)
                            : (eval(g, x + h) - 2 * eval(g, x) + eval(g, x - h)) / (h * h);
      return {Complex(v, 0), DerivativeMethod::finite_difference};
    }
  }
}

std::pair<Eigen::ArrayXd, Eigen::ArrayXd> gauss_hermite(int n) {
  require(n >= 1, "gauss_hermite needs n >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(double(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  Eigen::ArrayXd x = es.eigenvalues().array();
  // Weights from the Christoffel function, w = phi(x) / sum_k h_k(x)^2 with
  // h_k the orthonormal polynomials times sqrt(phi); the h_k recursion stays
  // in range where the polynomials themselves would overflow.
  Eigen::ArrayXd w(n);
  for (int i = 0; i < n; ++i) {
    double xi = x[i];
    double h0 = std::exp(-0.25 * xi * xi) / std::pow(2 * kPi, 0.25), h1 = xi * h0;
    double sum = h0 * h0 + (n > 1 ? h1 * h1 : 0.0);
    for (int k = 1; k + 1 < n; ++k) {
      double h2 = (xi * h1 - std::sqrt(double(k)) * h0) / std::sqrt(double(k + 1));
      h0 = h1, h1 = h2;
      sum += h2 * h2;
    }
    double phi = std::exp(-0.5 * xi * xi) / std::sqrt(2 * kPi);
    w[i] = sum > 0 ? phi / sum : 0.0;
  }
  // Symmetrize against rounding.
  for (int i = 0; i < n / 2; ++i) {
    double xi = 0.5 * (x[n - 1 - i] - x[i]);
    double wi = 0.5 * (w[n - 1 - i] + w[i]);
    x[i] = -xi, x[n - 1 - i] = xi;
    w[i] = w[n - 1 - i] = wi;
  }
  if (n % 2) x[n / 2] = 0.0;
  return {x, w / w.sum()};
}

std::pair<Eigen::ArrayXd, Eigen::ArrayXd> gauss_legendre(int n) {
  require(n >= 1, "gauss_legendre needs n >= 1");
  Eigen::ArrayXd x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = z;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1, p1 = p2;
      }
      if (n == 1) p0 = 1, p1 = z;
      dp = n * (z * p1 - p0) / (z * z - 1);
      double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      double p0 = 1, p1 = z;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1, p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1);
    }
    x[i] = -z, x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2 / ((1 - z * z) * dp * dp);
  }
  return {x, w};
}

namespace {

QuadratureRule from_pairs(std::vector<std::pair<double, double>> pts, QuadratureDomain dom, QuadratureScheme scheme) {
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& p : pts) {
    if (!merged.empty() && merged.back().first == p.first) merged.back().second += p.second;
    else merged.push_back(p);
  }
  QuadratureRule r;
  r.nodes.resize(Eigen::Index(merged.size()));
  r.weights.resize(Eigen::Index(merged.size()));
  for (std::size_t i = 0; i < merged.size(); ++i) r.nodes[i] = merged[i].first, r.weights[i] = merged[i].second;
  r.domain = dom;
  r.scheme = scheme;
  return r;
}

// Number of points for each segment, proportional to its length.
std::vector<int> split_by_length(const std::vector<Segment>& segs, int total, int minimum) {
  double len = 0;
  for (const auto& s : segs) len += s.b - s.a;
  std::vector<int> n;
  for (const auto& s : segs) n.push_back(std::max(minimum, int(std::lround(total * (s.b - s.a) / len))));
  return n;
}

}  // namespace

QuadratureRule make_quadrature(const SpectralDensity& g, int resolution, QuadratureScheme scheme) {
  require(resolution >= 2, "quadrature resolution must be at least 2");
  std::vector<std::pair<double, double>> pts;
  const bool piecewise = g.tail() == TailClass::compact_support;
  const auto dom = piecewise ? QuadratureDomain::per_segment : QuadratureDomain::full_line;

  if (scheme == QuadratureScheme::quantile) {
    double mass = g.total_mass();
    for (int m = 0; m < resolution; ++m) pts.emplace_back(g.quantile((m + 0.5) / resolution), mass / resolution);
    return from_pairs(std::move(pts), dom, scheme);
  }

  if (scheme == QuadratureScheme::equispaced) {
    if (g.kind() == DensityKind::lorentzian) {
      // Uniform in s with w = 4 gamma sinh(s): evenly spaced near the
      // centre, geometric in the tails out to where the neglected mass is
      // below 1e-12.
      double gm = g.lorentz_scale();
      double s_max = std::asinh(2.0 / (kPi * 1e-12) / 4.0);
      double h = 2 * s_max / resolution;
      for (int m = 0; m < resolution; ++m) {
        double s = -s_max + (m + 0.5) * h;
        double x = 4 * gm * std::sinh(s);
        pts.emplace_back(x, h * 4 * gm * std::cosh(s) * eval(g, x));
      }
    } else if (piecewise) {
      auto n = split_by_length(g.segments(), resolution, 1);
      for (std::size_t i = 0; i < n.size(); ++i) {
        const auto& s = g.segments()[i];
        double h = (s.b - s.a) / n[i];
        for (int k = 0; k < n[i]; ++k) {
          double x = s.a + (k + 0.5) * h;
          pts.emplace_back(x, s.extend(x) * h);
        }
      }
    } else {
      auto [lo, hi] = g.effective_support();
      double h = (hi - lo) / resolution;
      for (int m = 0; m < resolution; ++m) {
        double x = lo + (m + 0.5) * h;
        pts.emplace_back(x, eval(g, x) * h);
      }
    }
    return from_pairs(std::move(pts), dom, scheme);
  }

  switch (g.kind()) {
    case DensityKind::gaussian:
    case DensityKind::gaussian_mixture: {
      int per = std::max(8, resolution / int(g.components().size()));
      auto [x, w] = gauss_hermite(per);
      for (const auto& c : g.components())
        for (int k = 0; k < per; ++k) pts.emplace_back(c.mean + c.sigma * x[k], c.weight * w[k]);
      break;
    }
    case DensityKind::lorentzian: {
      // sinh-sinh substitution; the window reaches out to where the
      // neglected tail mass is below 1e-16.
      double omega_max = (2 / kPi) * 1e16;
      double t_max = std::asinh((2 / kPi) * std::asinh(omega_max));
      int n = resolution;
      double h = 2 * t_max / (n - 1);
      for (int k = 0; k < n; ++k) {
        double t = -t_max + k * h;
        double u = (kPi / 2) * std::sinh(t);
        pts.emplace_back(g.lorentz_scale() * std::sinh(u), h * std::cosh(t) / (2 * std::cosh(u)));
      }
      break;
    }
    default: {
      auto n = split_by_length(g.segments(), resolution, 4);
      for (std::size_t i = 0; i < n.size(); ++i) {
        const auto& s = g.segments()[i];
        auto [x, w] = gauss_legendre(n[i]);
        double half = 0.5 * (s.b - s.a), mid = 0.5 * (s.a + s.b);
        for (int k = 0; k < n[i]; ++k) {
          double xx = mid + half * x[k];
          pts.emplace_back(xx, half * w[k] * s.extend(xx));
        }
      }
    }
  }
  return from_pairs(std::move(pts), dom, QuadratureScheme::automatic);
}

namespace builtin {

SpectralDensity standard_gaussian() { return SpectralDensity::gaussian(0.0, 1.0); }
SpectralDensity standard_lorentzian() { return SpectralDensity::lorentzian(1.0); }

SpectralDensity two_step() {
  auto g = SpectralDensity::piecewise_constant({{-1.0, -0.5, 1.0}, {0.25, 1.25, 0.5}});
  g.set_name("two-step");
  return g;
}

SpectralDensity twin_peaks() {
  auto g = SpectralDensity::piecewise_linear({{-1.0, -0.75, 0.0, 2.0},
                                              {-0.75, -0.5, 2.0, 0.0},
                                              {0.5, 0.75, 0.0, 2.0},
                                              {0.75, 1.0, 2.0, 0.0}});
  g.set_name("twin-peaks");
  return g;
}

SpectralDensity plateau_ramps() {
  auto g = SpectralDensity::piecewise_linear({{-3.0, -2.0, 7.0, 7.0},
                                              {-2.0, -1.0, 4.0, 3.9},
                                              {-1.0, 1.0, 3.0, 3.0},
                                              {1.0, 2.0, 3.9, 4.0},
                                              {2.0, 3.0, 7.0, 7.0}});
  g.set_name("plateau-ramps");
  return g;
}

}  // namespace builtin

SpectralDensity density_from_spec(const std::string& kind, const std::vector<double>& p) {
  auto bad = [&](const std::string& why) -> SpectralDensity { fail(ErrorKind::config_error, "density '" + kind + "': " + why); };
  try {
    if (kind == "gaussian") {
      if (p.empty()) return SpectralDensity::gaussian();
      if (p.size() != 2) return bad("expects params = [mean, sigma]");
      return SpectralDensity::gaussian(p[0], p[1]);
    }
    if (kind == "lorentzian") {
      if (p.empty()) return SpectralDensity::lorentzian();
      if (p.size() != 1) return bad("expects params = [scale]");
      return SpectralDensity::lorentzian(p[0]);
    }
    if (kind == "gaussian-mixture") {
      if (p.empty() || p.size() % 3) return bad("expects params as (weight, mean, sigma) triples");
      std::vector<GaussianComponent> c;
      for (std::size_t i = 0; i < p.size(); i += 3) c.push_back({p[i], p[i + 1], p[i + 2]});
      return SpectralDensity::gaussian_mixture(c);
    }
    if (kind == "piecewise-constant") {
      if (p.empty() || p.size() % 3) return bad("expects params as (a, b, value) triples");
      std::vector<std::array<double, 3>> c;
      for (std::size_t i = 0; i < p.size(); i += 3) c.push_back({p[i], p[i + 1], p[i + 2]});
      return SpectralDensity::piecewise_constant(c);
    }
    if (kind == "piecewise-linear") {
      if (p.empty() || p.size() % 4) return bad("expects params as (a, b, value_a, value_b) quadruples");
      std::vector<Segment> c;
      for (std::size_t i = 0; i < p.size(); i += 4) c.push_back({p[i], p[i + 1], p[i + 2], p[i + 3]});
      return SpectralDensity::piecewise_linear(c);
    }
    if (kind == "two-step" || kind == "twin-peaks" || kind == "plateau-ramps") {
      if (!p.empty()) return bad("takes no params");
      if (kind == "two-step") return builtin::two_step();
      if (kind == "twin-peaks") return builtin::twin_peaks();
      return builtin::plateau_ramps();
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config_error) throw;
    return bad(e.what());
  }
  return bad("unknown density kind");
}

std::string describe(const SpectralDensity& g) {
  std::ostringstream os;
  os.precision(17);
  os << g.name() << "(";
  switch (g.kind()) {
    case DensityKind::gaussian:
    case DensityKind::gaussian_mixture: {
      bool first = true;
      for (const auto& c : g.components()) {
        os << (first ? "" : ";") << c.weight << "," << c.mean << "," << c.sigma;
        first = false;
      }
      break;
    }
    case DensityKind::lorentzian: os << g.lorentz_scale(); break;
    default: {
      bool first = true;
      for (const auto& s : g.segments()) {
        os << (first ? "" : ";") << s.a << "," << s.b << "," << s.value_a << "," << s.value_b;
        first = false;
      }
    }
  }
  os << ")";
  return os.str();
}

}  // namespace kuramoto
