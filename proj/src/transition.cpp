#include "kuramoto/transition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kuramoto {
namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
double refine_sign_change(F&& f, double a, double b, double fa) {
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    double m = 0.5 * (a + b), fm = f(m);
    if (fm == 0) return m;
    if ((fm > 0) == (fa > 0)) a = m, fa = fm;
    else b = m;
  }
  return 0.5 * (a + b);
}

// Sign-change zeros of f on the open interval (a, b), n samples.
template <class F>
void scan_interval(F&& f, double a, double b, int n, std::vector<double>& out) {
  double h = (b - a) / n;
  double x0 = a + 0.5 * h * 1e-3, f0 = f(x0);
  if (f0 == 0) out.push_back(x0);
  for (int k = 1; k <= n; ++k) {
    double x1 = k == n ? b - 0.5 * h * 1e-3 : a + k * h;
    double f1 = f(x1);
    if (f1 == 0) out.push_back(x1);
    else if (f0 != 0 && (f0 > 0) != (f1 > 0)) out.push_back(refine_sign_change(f, x0, x1, f0));
    x0 = x1, f0 = f1;
  }
}

}  // namespace

std::vector<double> critical_ordinates(const SpectralDensity& g) {
  auto V = [&](double y) { return hilbert_transform(g, y); };
  std::vector<double> ys;
  if (g.tail() == TailClass::compact_support) {
    auto bp = g.breakpoints();
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) scan_interval(V, bp[i], bp[i + 1], 400, ys);
  } else {
    double lo, hi;
    if (g.kind() == DensityKind::lorentzian) {
      lo = -50 * g.lorentz_scale(), hi = -lo;
    } else {
      std::tie(lo, hi) = g.effective_support();
    }
    if (g.is_even()) {
      // Exact zero at the centre; scan each side separately.
      ys.push_back(0.0);
      std::vector<double> pos;
      scan_interval(V, 0.0, hi, 2000, pos);
      for (double y : pos)
        if (y > 1e-9) ys.push_back(y), ys.push_back(-y);
    } else {
      scan_interval(V, lo, hi, 4000, ys);
    }
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end(), [](double a, double b) { return std::abs(a - b) < 1e-10; }), ys.end());
  return ys;
}

std::vector<double> candidate_couplings(const SpectralDensity& g, const std::vector<double>& ys) {
  std::vector<double> ks;
  for (double y : ys) {
    double gy = eval(g, y);
    if (gy > 0) ks.push_back(2.0 / (kPi * gy));
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end(), [](double a, double b) { return std::abs(a - b) <= 1e-12 * b; }), ks.end());
  return ks;
}

double transition_point(const SpectralDensity& g) {
  auto ks = candidate_couplings(g, critical_ordinates(g));
  if (ks.empty()) fail(ErrorKind::no_transition, "no critical ordinate with positive density");
  return ks.front();
}

int count_eigenvalues(const SpectralDensity& g, double K, double re_floor) {
  double reach = g.total_mass() * K / 2 + 1;
  double im = g.support_radius() + 1;
  if (g.kind() == DensityKind::lorentzian) im = g.lorentz_scale() * 50 + 1;
  // Near a threshold the eigenvalue sits within a few re_floor of the left
  // edge, so |G| there is legitimately tiny; only an exact hit is fatal.
  return count_zeros(g, K, Window{re_floor, reach, -im, im}, 1e-12);
}

std::vector<InstabilityWindow> instability_windows(const SpectralDensity& g, double K_max, WindowScanOptions opt) {
  if (!(K_max > 0) || opt.grid_points < 2) fail(ErrorKind::invalid_argument, "window scan needs K_max > 0 and a grid");
  auto count = [&](double K) { return count_eigenvalues(g, K, opt.re_floor); };
  auto bisect = [&](double stable, double unstable) {
    while (std::abs(unstable - stable) > opt.tolerance) {
      double m = 0.5 * (stable + unstable);
      (count(m) > 0 ? unstable : stable) = m;
    }
    return 0.5 * (stable + unstable);
  };
  // Uniform grid plus probes either side of every threshold coupling, so a
  // gap narrower than the grid spacing is still seen.
  std::vector<double> Ks;
  for (int i = 1; i <= opt.grid_points; ++i) Ks.push_back(K_max * i / opt.grid_points);
  try {
    for (double c : candidate_couplings(g, critical_ordinates(g)))
      for (double f : {1 - 1e-5, 1 + 1e-5})
        if (c * f < K_max) Ks.push_back(c * f);
  } catch (const Error&) {
  }
  std::sort(Ks.begin(), Ks.end());
  std::vector<InstabilityWindow> out;
  double prevK = 0;
  int prev = 0;
  for (double K : Ks) {
    int c = count(K);
    if (c > 0 && prev == 0) out.push_back({bisect(prevK, K), K_max, true, c});
    if (c > 0) out.back().max_count = std::max(out.back().max_count, c);
    if (c == 0 && prev > 0) {
      out.back().hi = bisect(K, prevK);
      out.back().open_above = false;
    }
    prevK = K, prev = c;
  }
  return out;
}

TransitionReport analyze_transition(const SpectralDensity& g, double K_max, WindowScanOptions opt) {
  TransitionReport rep;
  rep.critical_ys = critical_ordinates(g);
  rep.candidate_Ks = candidate_couplings(g, rep.critical_ys);
  if (rep.candidate_Ks.empty()) fail(ErrorKind::no_transition, "no critical ordinate with positive density");
  rep.K_c = rep.candidate_Ks.front();
  if (g.is_even() && g.is_unimodal() && eval(g, 0.0) > 0) rep.kuramoto_point = 2.0 / (kPi * eval(g, 0.0));
  rep.windows = instability_windows(g, K_max, opt);
  return rep;
}

}  // namespace kuramoto
