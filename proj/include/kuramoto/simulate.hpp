#pragma once

#include <cstdint>
#include <vector>

#include "kuramoto/lindyn.hpp"

namespace kuramoto {

struct OscillatorEnsemble {
  Eigen::ArrayXd phases;       // kept in [0, 2 pi)
  Eigen::ArrayXd frequencies;
  double K = 0.0;
  std::uint64_t seed = 0;
  double time = 0.0;

  Eigen::Index N() const { return phases.size(); }
};

enum class FrequencySampling { iid, quantile };

// Initial phases: i.i.d. from h(theta) = (1 + 2 eps cos(theta - shift)) / (2 pi),
// so that the expected order parameter is eps * exp(i shift). eps = 0 gives
// uniformly random phases.
OscillatorEnsemble make_ensemble(const SpectralDensity& g, int N, double K, FrequencySampling sampling,
                                 std::uint64_t seed, double eps = 0.0, double shift = 0.0);

// Deterministic ensemble: n_freq quantile frequencies, each carrying
// n_phase oscillators at the quantiles of h. It samples the continuum state
// with Z_1(0, w) = eps exp(i shift) for every w, the same data the Galerkin
// solver starts from.
OscillatorEnsemble make_lattice_ensemble(const SpectralDensity& g, int n_freq, int n_phase, double K, double eps,
                                         double shift = 0.0);

// Equal-mass quantiles of h on [-pi, pi).
Eigen::ArrayXd phase_quantiles(int n, double eps, double shift = 0.0);

// (1/N) sum exp(i theta_j).
Complex order_parameter(const OscillatorEnsemble& ens);

// RK4 on d theta_i/dt = w_i + K r sin(psi - theta_i), one mean-field sum per
// stage. dt <= 0.1 / max(1, K): the frequency term is a constant drift that
// RK4 integrates exactly, so it does not enter the bound.
EtaTrajectory simulate_finite_N(OscillatorEnsemble& ens, double T, double dt, double dt_out);

enum class Closure {
  truncate,  // Z_{J+1} = 0
  poisson,   // Z_{J+1} = Z_1 Z_J; with J = 1 this is the Poisson-kernel reduction
};

struct GalerkinState {
  QuadratureRule rule;
  int J = 0;
  Eigen::ArrayXXcd Z;  // M x J, column j-1 holds mode j
  double time = 0.0;
};

struct GalerkinOptions {
  Closure closure = Closure::truncate;
  double mode_bound = 1e-3;  // tolerated excess of |Z_j| over 1
};

// Fourier hierarchy dZ_j/dt = i j w Z_j + (j K / 2)(eta Z_{j-1} - conj(eta) Z_{j+1}),
// eta = sum_m w_m Z_1(w_m), integrated with an exponential RK4 that treats
// the rotation exactly. h[j-1] is the initial (w-independent) Z_j.
// dt <= 0.1 / max(1, K J / 2). Throws ModeBoundViolation when some |Z_j|
// exceeds 1 + mode_bound at a sample time.
EtaTrajectory simulate_galerkin(const SpectralDensity& g, double K, int J, const QuadratureRule& rule,
                                const std::vector<Complex>& h, double T, double dt, double dt_out,
                                GalerkinOptions opt = {}, GalerkinState* final_state = nullptr);

}  // namespace kuramoto
