#include "kuramoto/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kuramoto {
namespace {

constexpr double kPi = std::numbers::pi;

struct NearZero {};

// Argument increment along the straight segment a -> b, adaptively refined.
double arg_change(const AnalyticFn& f, Complex a, Complex b, Complex fa, Complex fb, double zero_tol, int depth) {
  Complex m = 0.5 * (a + b);
  Complex fm = f(m).value;
  if (std::abs(fm) < zero_tol) throw NearZero{};
  double d1 = std::arg(fm / fa), d2 = std::arg(fb / fm), d = std::arg(fb / fa);
  bool smooth = std::abs(d1) < kPi / 4 && std::abs(d2) < kPi / 4 && std::abs(d1 + d2 - d) < 1e-9;
  if (smooth) return d1 + d2;
  if (depth > 48 || std::abs(b - a) < 1e-14 * std::max(1.0, std::abs(a))) throw NearZero{};
  return arg_change(f, a, m, fa, fm, zero_tol, depth + 1) + arg_change(f, m, b, fm, fb, zero_tol, depth + 1);
}

int winding(const AnalyticFn& f, const Window& w, double zero_tol) {
  const Complex corners[4] = {{w.re_min, w.im_min}, {w.re_max, w.im_min}, {w.re_max, w.im_max}, {w.re_min, w.im_max}};
  const int per_edge = 32;
  double total = 0;
  for (int e = 0; e < 4; ++e) {
    Complex p0 = corners[e], p1 = corners[(e + 1) % 4];
    Complex prev = p0, fprev = f(p0).value;
    if (std::abs(fprev) < zero_tol) throw NearZero{};
    for (int k = 1; k <= per_edge; ++k) {
      Complex next = p0 + (p1 - p0) * (double(k) / per_edge);
      Complex fnext = f(next).value;
      if (std::abs(fnext) < zero_tol) throw NearZero{};
      total += arg_change(f, prev, next, fprev, fnext, zero_tol, 0);
      prev = next, fprev = fnext;
    }
  }
  double turns = total / (2 * kPi);
  if (std::abs(turns - std::round(turns)) > 0.05) throw NearZero{};
  return int(std::lround(turns));
}

Window grow(const Window& w, double d) {
  Window v{w.re_min - d, w.re_max + d, w.im_min - d, w.im_max + d};
  if (w.re_min > 0 && v.re_min <= 0) v.re_min = 0.5 * w.re_min;
  return v;
}

bool inside(const Window& w, Complex z, double slack) {
  return z.real() >= w.re_min - slack && z.real() <= w.re_max + slack && z.imag() >= w.im_min - slack &&
         z.imag() <= w.im_max + slack;
}

RootKind classify(Complex z) {
  if (z.real() > 1e-12) return RootKind::eigenvalue;
  if (z.real() < -1e-12) return RootKind::resonance;
  return RootKind::embedded;
}

// Newton with step limiting; returns false if it does not settle. A root is
// accepted when the residual is below tol or when the last Newton step has
// shrunk to rounding level: far out on the second sheet G carries terms of
// size 1e10 and more, so an absolute residual cannot certify those roots.
bool newton(const AnalyticFn& f, Complex& z, double max_step, double tol) {
  double last = INFINITY;
  for (int it = 0; it < 100; ++it) {
    Jet j = f(z);
    if (!std::isfinite(std::abs(j.value)) || !std::isfinite(std::abs(j.derivative))) return false;
    if (j.derivative == 0.0) return std::abs(j.value) <= tol;
    Complex step = j.value / j.derivative;
    if (std::abs(step) > max_step) step *= max_step / std::abs(step);
    z -= step;
    last = std::abs(step);
    if (last <= 1e-15 * std::max(1.0, std::abs(z))) break;
  }
  Jet j = f(z);
  if (std::abs(j.value) <= tol) return true;
  return last <= 1e-12 * std::max(1.0, std::abs(z)) && std::abs(j.value / j.derivative) <= 1e-12 * std::max(1.0, std::abs(z));
}

int local_multiplicity(const AnalyticFn& f, Complex z) {
  Jet j = f(z);
  if (std::abs(j.derivative) > 1e-6) return 1;
  for (double r : {1e-4, 1e-3, 1e-2}) {
    try {
      return count_zeros(f, Window{z.real() - r, z.real() + r, z.imag() - r, z.imag() + r}, 1e-14).count;
    } catch (const Error&) {
    }
  }
  return 1;
}

}  // namespace

ZeroCount count_zeros(const AnalyticFn& f, Window w, double zero_tol, const std::vector<Complex>& poles) {
  if (!(w.re_min < w.re_max && w.im_min < w.im_max)) fail(ErrorKind::invalid_argument, "empty window");
  const double nudges[] = {0.0, 2.5e-3, 5e-3, 1e-2};
  for (double d : nudges) {
    Window v = d == 0.0 ? w : grow(w, d);
    try {
      int n = 0;
      try {
        n = winding(f, v, zero_tol);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::pole_hit) throw;
        throw NearZero{};
      }
      for (Complex p : poles) n += inside(v, p, 0.0) ? 1 : 0;
      return {n, v};
    } catch (const NearZero&) {
    }
  }
  fail(ErrorKind::contour_through_zero, "zero on or near the counting contour");
}

int count_zeros(const SpectralDensity& g, double K, Window w, double zero_tol) {
  if (g.analyticity() == Analyticity::real_axis_only && w.re_min <= 0)
    fail(ErrorKind::unsupported_continuation, "piecewise density: window must lie in Re lambda > 0");
  return count_zeros([&](Complex z) { return characteristic_jet(g, K, z); }, w, zero_tol, characteristic_poles(g)).count;
}

std::vector<Complex> characteristic_poles(const SpectralDensity& g) {
  if (g.kind() == DensityKind::lorentzian) return {Complex(-g.lorentz_scale(), 0)};
  return {};
}

RootSearchResult find_zeros(const AnalyticFn& f, Window w, RootSearchOptions opt, const std::vector<Complex>& poles) {
  ZeroCount zc = count_zeros(f, w, 1e-6, poles);
  RootSearchResult res;
  res.window = zc.window;
  res.contour_count = zc.count;
  const Window& v = zc.window;
  const double diag = std::hypot(v.re_max - v.re_min, v.im_max - v.im_min);
  int nre = opt.grid_re, nim = opt.grid_im;
  std::vector<SpectralRoot> found;

  for (int round = 0; round <= opt.refinements; ++round, nre *= 2, nim *= 2) {
    res.grid_re = nre, res.grid_im = nim;
    double hre = (v.re_max - v.re_min) / (nre - 1), him = (v.im_max - v.im_min) / (nim - 1);
    std::vector<double> mag(std::size_t(nre) * nim);
    auto at = [&](int i, int k) { return Complex(v.re_min + i * hre, v.im_min + k * him); };
    for (int i = 0; i < nre; ++i)
      for (int k = 0; k < nim; ++k) {
        double m = INFINITY;
        try {
          m = std::abs(f(at(i, k)).value);
        } catch (const Error&) {
        }
        mag[std::size_t(i) * nim + k] = std::isfinite(m) ? m : INFINITY;
      }
    for (int i = 0; i < nre; ++i)
      for (int k = 0; k < nim; ++k) {
        double m = mag[std::size_t(i) * nim + k];
        bool minimum = std::isfinite(m);
        for (int di = -1; di <= 1 && minimum; ++di)
          for (int dk = -1; dk <= 1; ++dk) {
            int ii = i + di, kk = k + dk;
            if ((di || dk) && ii >= 0 && ii < nre && kk >= 0 && kk < nim && mag[std::size_t(ii) * nim + kk] < m) {
              minimum = false;
              break;
            }
          }
        if (!minimum) continue;
        Complex z = at(i, k);
        try {
          if (!newton(f, z, 0.25 * diag, opt.newton_tol)) continue;
        } catch (const Error&) {
          continue;  // wandered off the domain (e.g. across the axis for piecewise g)
        }
        if (!inside(v, z, 1e-9)) continue;
        bool dup = std::any_of(found.begin(), found.end(), [&](const SpectralRoot& r) {
          double tol = r.multiplicity > 1 ? 1e-5 : 1e-8;
          return std::abs(r.lambda - z) < tol * std::max(1.0, std::abs(z));
        });
        if (dup) continue;
        Jet j = f(z);
        found.push_back({z, classify(z), local_multiplicity(f, z), j.derivative, std::abs(j.value)});
      }
    int total = 0;
    for (const auto& r : found) total += r.multiplicity;
    if (total == zc.count) {
      std::sort(found.begin(), found.end(),
                [](const SpectralRoot& a, const SpectralRoot& b) { return a.lambda.real() > b.lambda.real(); });
      res.roots = found;
      return res;
    }
  }
  int total = 0;
  for (const auto& r : found) total += r.multiplicity;
  fail(ErrorKind::count_mismatch, "root search found " + std::to_string(total) + " zeros, contour count is " +
                                      std::to_string(zc.count));
}

RootSearchResult find_roots(const SpectralDensity& g, double K, Window w, RootSearchOptions opt) {
  if (g.analyticity() == Analyticity::real_axis_only && w.re_min <= 0)
    fail(ErrorKind::unsupported_continuation, "piecewise density: window must lie in Re lambda > 0");
  auto res = find_zeros([&](Complex z) { return characteristic_jet(g, K, z); }, w, opt, characteristic_poles(g));
  for (auto& r : res.roots) r.residue = residue_coefficient(g, K, r.lambda);
  return res;
}

Complex residue_coefficient(const SpectralDensity& g, double K, Complex lambda_n) {
  Jet j = characteristic_jet(g, K, lambda_n);
  // Relative test as well: see newton() on badly scaled roots.
  if (std::abs(j.value) > 1e-8 && std::abs(j.value) > 1e-8 * std::abs(j.derivative) * std::max(1.0, std::abs(lambda_n)))
    fail(ErrorKind::not_a_root, "lambda is not a zero of G");
  if (g.kind() == DensityKind::gaussian) {
    // At a zero F = 2/K, so F' = (u sigma F - 1)/sigma^2 needs no special function.
    const auto& c = g.components()[0];
    Complex u = (lambda_n - Complex(0, c.mean)) / c.sigma;
    Complex dF = (u * c.sigma * (2.0 / K) - 1.0) / (c.sigma * c.sigma);
    return -0.5 * K * dF;
  }
  return j.derivative;
}

SimplicityReport check_simplicity(const std::vector<SpectralRoot>& roots) {
  SimplicityReport rep;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (std::abs(roots[i].residue) <= 1e-8 || roots[i].multiplicity > 1) {
      rep.all_simple = false;
      rep.flagged.push_back(i);
    }
  return rep;
}

RootPath continue_root_in_K(const SpectralDensity& g, double K_start, double K_end, int steps, Complex seed) {
  if (steps < 1) fail(ErrorKind::invalid_argument, "continuation needs at least one step");
  auto sheet_of = [](Complex z) {
    return z.real() > 1e-12 ? Sheet::first : z.real() < -1e-12 ? Sheet::second : Sheet::boundary;
  };
  auto correct = [&](double K, Complex& z) {
    AnalyticFn f = [&](Complex x) { return characteristic_jet(g, K, x); };
    return newton(f, z, 0.1 * (1 + std::abs(z)), 1e-12);
  };
  RootPath path;
  double K = K_start;
  Complex z = seed;
  if (!correct(K, z)) fail(ErrorKind::lost_root, "seed does not converge to a root");
  path.points.push_back({K, z, sheet_of(z)});
  const double nominal = (K_end - K_start) / steps;
  double h = nominal;
  while ((K_end - K) * nominal > 1e-15 * std::abs(nominal)) {
    if (std::abs(h) > std::abs(K_end - K)) h = K_end - K;
    Complex zn;
    bool ok = false;
    try {
      Jet j = characteristic_jet(g, K, z);
      Complex F = continued_resolvent_jet(g, z).value;
      Complex dz = 0.5 * F / j.derivative;  // d lambda / dK
      zn = z + h * dz;
      ok = correct(K + h, zn) && std::abs(zn - (z + h * dz)) < 0.1 * (1 + std::abs(z));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::unsupported_continuation) {
        path.reached_end = false;
        return path;
      }
    }
    if (!ok) {
      h *= 0.5;
      if (std::abs(h) < 1e-6 * std::abs(nominal)) fail(ErrorKind::lost_root, "continuation step underflow");
      continue;
    }
    if ((z.real() > 0) != (zn.real() > 0)) {
      double s = z.real() / (z.real() - zn.real());
      path.crossings.push_back({K + s * h, z.imag() + s * (zn.imag() - z.imag()), zn.real() > 0 ? +1 : -1});
    }
    K += h;
    z = zn;
    path.points.push_back({K, z, sheet_of(z)});
    if (std::abs(h) < std::abs(nominal)) h = std::min(std::abs(nominal), 2 * std::abs(h)) * (nominal > 0 ? 1 : -1);
  }
  return path;
}

std::string to_string(RootKind kind) {
  switch (kind) {
    case RootKind::eigenvalue: return "eigenvalue";
    case RootKind::resonance: return "resonance";
    default: return "embedded";
  }
}

}  // namespace kuramoto
