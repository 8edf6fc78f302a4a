#include "kuramoto/bifurcation.hpp"

#include <cmath>
#include <numbers>

#include "kuramoto/transition.hpp"

namespace kuramoto {

AmplitudeModel amplitude_model(double K_c, Complex D0, double gpp0) {
  double kc2 = K_c * K_c;
  return {K_c, D0, gpp0, std::numbers::pi * gpp0 * kc2 * kc2 / 16};
}

AmplitudeModel amplitude_model(const SpectralDensity& g) {
  if (!g.is_even() || !g.is_unimodal()) fail(ErrorKind::not_even_unimodal, "amplitude equation needs an even unimodal density");
  double gpp0 = derivative(g, 0.0, 2).value.real();
  if (std::abs(gpp0) < 1e-10) fail(ErrorKind::zero_curvature, "g''(0) vanishes");
  double K_c = transition_point(g);
  Complex D0 = residue_coefficient(g, K_c, 0.0);
  return amplitude_model(K_c, D0, gpp0);
}

Complex amplitude_rhs(const AmplitudeModel& m, Complex alpha, double eps) {
  return alpha / (std::conj(m.D0) * m.K_c) * (eps + m.cubic_coeff * std::norm(alpha));
}

PredictedAmplitude predicted_rc(const AmplitudeModel& m, double K) {
  double eps = K - m.K_c;
  bool sub = m.gpp0 > 0;
  PredictedAmplitude p{0.0, std::abs(eps), true, sub};
  // Fixed point |alpha|^2 = -eps / cubic_coeff, when positive.
  double r2 = -eps / m.cubic_coeff;
  if (r2 <= 0 || eps == 0) return {0.0, 0.0, !(sub && eps > 0), sub};
  p.r = std::sqrt(r2);
  p.stable = !sub;
  return p;
}

BifurcationRow tail_statistics(const EtaTrajectory& traj) {
  const std::size_t n = traj.values.size();
  const std::size_t start = n - n / 3;
  std::vector<double> r;
  for (std::size_t i = start; i < n; ++i) r.push_back(std::abs(traj.values[i]));
  BifurcationRow row{0, 0, 0, 0, false};
  if (r.size() < 4) return row;
  double mean = 0;
  for (double x : r) mean += x;
  mean /= double(r.size());
  // Ten batch means.
  const std::size_t nb = 10, len = r.size() / nb;
  double var = 0;
  std::vector<double> batches;
  for (std::size_t b = 0; b < nb && len > 0; ++b) {
    double s = 0;
    for (std::size_t i = b * len; i < (b + 1) * len; ++i) s += r[i];
    batches.push_back(s / double(len));
  }
  for (double x : batches) var += (x - mean) * (x - mean);
  double stderr_ = batches.size() > 1 ? std::sqrt(var / double(batches.size() - 1) / double(batches.size())) : 0.0;
  double first = 0, second = 0;
  const std::size_t half = r.size() / 2;
  for (std::size_t i = 0; i < half; ++i) first += r[i];
  for (std::size_t i = half; i < r.size(); ++i) second += r[i];
  first /= double(half), second /= double(r.size() - half);
  row.r_sim = mean;
  row.sim_stderr = stderr_;
  row.converged = std::abs(second - first) < 0.01 * std::max(mean, 0.01);
  return row;
}

BifurcationCurve bifurcation_diagram(const SpectralDensity& g, const std::vector<double>& K_grid,
                                     BifurcationSimParams p) {
  for (std::size_t i = 1; i < K_grid.size(); ++i)
    if (!(K_grid[i] > K_grid[i - 1])) fail(ErrorKind::invalid_argument, "K grid must be strictly increasing");
  AmplitudeModel model = amplitude_model(g);
  BifurcationCurve curve;
  QuadratureRule rule;
  if (p.backend == SimBackend::galerkin) rule = make_quadrature(g, p.nodes, p.scheme);
  for (double K : K_grid) {
    EtaTrajectory traj;
    if (p.backend == SimBackend::galerkin) {
      std::vector<Complex> h(std::size_t(std::max(p.modes, 1)), 0.0);
      h[0] = p.h1;
      GalerkinOptions opt;
      opt.closure = p.closure;
      double dt = std::min(p.dt, 0.1 / std::max(1.0, K * p.modes / 2));
      traj = simulate_galerkin(g, K, p.modes, rule, h, p.T, dt, p.dt_out, opt);
    } else {
      auto ens = make_ensemble(g, p.oscillators, K, FrequencySampling::quantile, p.seed, p.h1);
      double dt = std::min(p.dt, 0.1 / std::max(1.0, K));
      traj = simulate_finite_N(ens, p.T, dt, p.dt_out);
    }
    BifurcationRow row = tail_statistics(traj);
    row.K = K;
    row.r_theory = K <= model.K_c ? 0.0 : predicted_rc(model, K).r;
    curve.rows.push_back(row);
  }
  return curve;
}

PowerFit fit_scaling(const std::vector<double>& eps, const std::vector<double>& r) {
  if (eps.size() != r.size() || eps.size() < 2) fail(ErrorKind::invalid_argument, "fit needs matching samples");
  auto line = [](const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return std::pair{slope, (sy - slope * sx) / n};
  };
  std::vector<double> lx, ly, ratio;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    lx.push_back(std::log(eps[i]));
    ly.push_back(std::log(r[i]));
    ratio.push_back(r[i] / std::sqrt(eps[i]));
  }
  return {line(lx, ly).first, line(eps, ratio).second};
}

}  // namespace kuramoto
