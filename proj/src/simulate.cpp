#include "kuramoto/simulate.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "etd.hpp"

namespace kuramoto {
namespace {

constexpr double kPi = std::numbers::pi;

// Inverse of H(theta) = (theta + pi + 2 eps sin theta) / (2 pi) on [-pi, pi).
double invert_phase_cdf(double u, double eps) {
  double th = 2 * kPi * u - kPi;
  for (int it = 0; it < 60; ++it) {
    double f = (th + kPi + 2 * eps * std::sin(th)) / (2 * kPi) - u;
    double df = (1 + 2 * eps * std::cos(th)) / (2 * kPi);
    double step = f / df;
    th -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return th;
}

double wrap(double th) {
  th = std::fmod(th, 2 * kPi);
  return th < 0 ? th + 2 * kPi : th;
}

void check_eps(double eps) {
  if (!(eps >= 0 && eps <= 0.5)) fail(ErrorKind::invalid_argument, "phase perturbation needs 0 <= eps <= 1/2");
}

}  // namespace

Eigen::ArrayXd phase_quantiles(int n, double eps, double shift) {
  check_eps(eps);
  Eigen::ArrayXd th(n);
  for (int k = 0; k < n; ++k) th[k] = wrap(invert_phase_cdf((k + 0.5) / n, eps) + shift);
  return th;
}

OscillatorEnsemble make_ensemble(const SpectralDensity& g, int N, double K, FrequencySampling sampling,
                                 std::uint64_t seed, double eps, double shift) {
  if (N < 1) fail(ErrorKind::invalid_argument, "ensemble needs N >= 1");
  check_eps(eps);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  OscillatorEnsemble e;
  e.K = K;
  e.seed = seed;
  e.phases.resize(N);
  e.frequencies.resize(N);
  for (int i = 0; i < N; ++i) {
    double p = sampling == FrequencySampling::quantile ? (i + 0.5) / N : unif(rng);
    while (p <= 0.0 || p >= 1.0) p = unif(rng);
    e.frequencies[i] = g.quantile(p);
  }
  for (int i = 0; i < N; ++i) e.phases[i] = wrap(invert_phase_cdf(unif(rng), eps) + shift);
  return e;
}

OscillatorEnsemble make_lattice_ensemble(const SpectralDensity& g, int n_freq, int n_phase, double K, double eps,
                                         double shift) {
  if (n_freq < 1 || n_phase < 1) fail(ErrorKind::invalid_argument, "lattice ensemble needs positive sizes");
  Eigen::ArrayXd th = phase_quantiles(n_phase, eps, shift);
  OscillatorEnsemble e;
  e.K = K;
  e.phases.resize(Eigen::Index(n_freq) * n_phase);
  e.frequencies.resize(e.phases.size());
  for (int m = 0; m < n_freq; ++m) {
    double w = g.quantile((m + 0.5) / n_freq);
    for (int k = 0; k < n_phase; ++k) {
      e.frequencies[Eigen::Index(m) * n_phase + k] = w;
      e.phases[Eigen::Index(m) * n_phase + k] = th[k];
    }
  }
  return e;
}

Complex order_parameter(const OscillatorEnsemble& ens) {
  double c = ens.phases.cos().sum(), s = ens.phases.sin().sum();
  return Complex(c, s) / double(ens.N());
}

EtaTrajectory simulate_finite_N(OscillatorEnsemble& ens, double T, double dt, double dt_out) {
  if (!(dt > 0) || dt > 0.1 / std::max(1.0, ens.K)) fail(ErrorKind::step_too_large, "dt must satisfy dt <= 0.1/max(1,K)");
  if (!(dt_out >= dt) || !(T >= 0)) fail(ErrorKind::invalid_argument, "need T >= 0 and dt_out >= dt");
  const double K = ens.K;
  const Eigen::ArrayXd& w = ens.frequencies;
  const double invN = 1.0 / double(ens.N());
  // Right-hand side w + K Im(eta exp(-i theta)).
  auto rhs = [&](const Eigen::ArrayXd& th, Eigen::ArrayXd& out) {
    Eigen::ArrayXd c = th.cos(), s = th.sin();
    double er = c.sum() * invN, ei = s.sum() * invN;
    out = w + K * (ei * c - er * s);
  };
  EtaTrajectory traj;
  traj.source = EtaSource::finite_N;
  traj.times.push_back(ens.time);
  traj.values.push_back(order_parameter(ens));
  Eigen::ArrayXd k1, k2, k3, k4, tmp;
  const int samples = int(std::floor(T / dt_out + 1e-9));
  const int sub = int(std::ceil(dt_out / dt - 1e-9));
  const double h = dt_out / sub;
  const double t0 = ens.time;
  for (int s = 1; s <= samples; ++s) {
    for (int k = 0; k < sub; ++k) {
      Eigen::ArrayXd& th = ens.phases;
      rhs(th, k1);
      tmp = th + 0.5 * h * k1;
      rhs(tmp, k2);
      tmp = th + 0.5 * h * k2;
      rhs(tmp, k3);
      tmp = th + h * k3;
      rhs(tmp, k4);
      th += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
      th = th.unaryExpr([](double x) { return wrap(x); });
    }
    ens.time = t0 + s * dt_out;
    traj.times.push_back(ens.time);
    traj.values.push_back(order_parameter(ens));
  }
  traj.metadata["K"] = std::to_string(K);
  traj.metadata["N"] = std::to_string(ens.N());
  traj.metadata["seed"] = std::to_string(ens.seed);
  return traj;
}

EtaTrajectory simulate_galerkin(const SpectralDensity& g, double K, int J, const QuadratureRule& rule,
                                const std::vector<Complex>& h, double T, double dt, double dt_out,
                                GalerkinOptions opt, GalerkinState* final_state) {
  if (opt.closure == Closure::truncate && J < 8) fail(ErrorKind::invalid_argument, "truncated hierarchy needs J >= 8");
  if (J < 1) fail(ErrorKind::invalid_argument, "need J >= 1");
  if (!(dt > 0) || dt > 0.1 / std::max(1.0, K * J / 2))
    fail(ErrorKind::step_too_large, "dt must satisfy dt <= 0.1/max(1, K J/2)");
  if (!(dt_out >= dt) || !(T >= 0)) fail(ErrorKind::invalid_argument, "need T >= 0 and dt_out >= dt");
  const Eigen::Index M = rule.size();
  const Eigen::ArrayXd& wts = rule.weights;
  Eigen::ArrayXXcd Z = Eigen::ArrayXXcd::Zero(M, J);
  for (int j = 0; j < J && j < int(h.size()); ++j) Z.col(j).setConstant(h[j]);

  const int sub = int(std::ceil(dt_out / dt - 1e-9));
  const double step = dt_out / sub;
  Eigen::ArrayXXcd L(M, J);
  for (int j = 0; j < J; ++j) L.col(j) = Complex(0, j + 1) * rule.nodes.cast<Complex>();
  const auto c = detail::etd_coefficients(L, step);
  auto eta_of = [&](const Eigen::ArrayXXcd& z) { return (wts * z.col(0)).sum(); };
  // Coupling terms (j K / 2)(eta Z_{j-1} - conj(eta) Z_{j+1}).
  auto rhs = [&](const Eigen::ArrayXXcd& z, Eigen::ArrayXXcd& out) {
    Complex eta = eta_of(z);
    Complex ceta = std::conj(eta);
    out.resize(M, J);
    for (int j = 0; j < J; ++j) {
      double c = 0.5 * K * (j + 1);
      if (j == 0) out.col(0) = eta;
      else out.col(j) = eta * z.col(j - 1);
      if (j + 1 < J) out.col(j) -= ceta * z.col(j + 1);
      else if (opt.closure == Closure::poisson) out.col(j) -= ceta * z.col(0) * z.col(j);
      out.col(j) *= c;
    }
  };

  EtaTrajectory traj;
  traj.source = EtaSource::galerkin;
  traj.times.push_back(0.0);
  traj.values.push_back(eta_of(Z));
  // Exponential RK4 (Cox-Matthews): the rotation i j w is integrated exactly
  // and fast nodes see the correct averaged forcing.
  Eigen::ArrayXXcd Nu, Na, Nb, Nc, a, b, cc;
  const int samples = int(std::floor(T / dt_out + 1e-9));
  for (int s = 1; s <= samples; ++s) {
    for (int k = 0; k < sub; ++k) {
      rhs(Z, Nu);
      a = c.E2 * Z + c.Q * Nu;
      rhs(a, Na);
      b = c.E2 * Z + c.Q * Na;
      rhs(b, Nb);
      cc = c.E2 * a + c.Q * (2.0 * Nb - Nu);
      rhs(cc, Nc);
      Z = c.E * Z + c.f1 * Nu + 2.0 * c.f2 * (Na + Nb) + c.f3 * Nc;
    }
    double zmax = Z.abs().maxCoeff();
    if (!(zmax <= 1 + opt.mode_bound))
      fail(ErrorKind::mode_bound_violation, "|Z_j| reached " + std::to_string(zmax) + " at t = " +
                                                std::to_string(s * dt_out));
    traj.times.push_back(s * dt_out);
    traj.values.push_back(eta_of(Z));
  }
  traj.metadata["K"] = std::to_string(K);
  traj.metadata["density"] = describe(g);
  traj.metadata["modes"] = std::to_string(J);
  traj.metadata["nodes"] = std::to_string(M);
  traj.metadata["closure"] = opt.closure == Closure::truncate ? "truncate" : "poisson";
  if (final_state) *final_state = {rule, J, Z, samples * dt_out};
  return traj;
}

}  // namespace kuramoto
