#pragma once

#include <cstdint>
#include <vector>

#include "kuramoto/simulate.hpp"

namespace kuramoto {

// Amplitude equation d alpha/dt = alpha (eps + cubic |alpha|^2) / (conj(D0) K_c)
// on the critical mode near K_c.
struct AmplitudeModel {
  double K_c;
  Complex D0;     // G'(0) at K = K_c
  double gpp0;    // g''(0)
  double cubic_coeff;  // pi g''(0) K_c^4 / 16
};

// Throws NotEvenUnimodal, ZeroCurvature (|g''(0)| < 1e-10).
AmplitudeModel amplitude_model(const SpectralDensity& g);
AmplitudeModel amplitude_model(double K_c, Complex D0, double gpp0);

Complex amplitude_rhs(const AmplitudeModel& m, Complex alpha, double eps);

struct PredictedAmplitude {
  double r;           // leading-order stationary amplitude
  double half_width;  // uncertainty band for the unspecified O(K - K_c) term
  bool stable;        // false on a backward (subcritical) branch
  bool subcritical;   // g''(0) > 0
};

PredictedAmplitude predicted_rc(const AmplitudeModel& m, double K);

enum class SimBackend { galerkin, finite_N };

struct BifurcationSimParams {
  SimBackend backend = SimBackend::galerkin;
  // Galerkin: the Poisson closure at J = 1 is the only truncation that stays
  // bounded once oscillators lock.
  Closure closure = Closure::poisson;
  int modes = 1;
  int nodes = 4096;
  QuadratureScheme scheme = QuadratureScheme::equispaced;
  // finite-N
  int oscillators = 20000;
  std::uint64_t seed = 1;
  // both
  double T = 900.0;
  double dt = 0.1;
  double dt_out = 0.5;
  double h1 = 0.01;
};

struct BifurcationRow {
  double K;
  double r_theory;
  double r_sim;
  double sim_stderr;
  bool converged;
};

struct BifurcationCurve {
  std::vector<BifurcationRow> rows;
};

// Tail statistics of |eta| over the final third: mean, batch-means standard
// error, and whether the running mean drifted by less than 1%.
BifurcationRow tail_statistics(const EtaTrajectory& traj);

BifurcationCurve bifurcation_diagram(const SpectralDensity& g, const std::vector<double>& K_grid,
                                     BifurcationSimParams params = {});

struct PowerFit {
  double slope;
  double prefactor;  // r / sqrt(K - K_c) extrapolated linearly to K = K_c
};

// Log-log slope of r against K - K_c, and the linear extrapolation of
// r / sqrt(K - K_c) to zero distance.
PowerFit fit_scaling(const std::vector<double>& eps, const std::vector<double>& r);

}  // namespace kuramoto
