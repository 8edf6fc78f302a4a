#pragma once

#include <map>
#include <string>
#include <vector>

#include "kuramoto/spectrum.hpp"

namespace kuramoto {

// Initial first-harmonic profile h1(w) = sum of terms, each with a closed-form
// pairing against the resolvent kernel.
class InitialFunction {
 public:
  enum class Kind { constant_one, exp_profile, rational_profile };
  struct Term {
    Kind kind;
    Complex amplitude;
    double param;  // beta >= 0 for exp_profile, c > 0 for rational_profile
  };

  static InitialFunction constant_one(Complex amplitude = 1.0);
  // amplitude * exp(i beta w), bounded in the upper half-plane.
  static InitialFunction exp_profile(double beta, Complex amplitude = 1.0);
  // amplitude * c / (c - i w).
  static InitialFunction rational_profile(double c, Complex amplitude = 1.0);

  InitialFunction operator+(const InitialFunction& other) const;
  InitialFunction scaled(Complex s) const;

  Complex operator()(double omega) const;
  // Continuation to complex z.
  Complex at(Complex z) const;
  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

enum class EtaSource { residue_prediction, direct_integration, finite_N, galerkin };
std::string to_string(EtaSource s);

struct EtaTrajectory {
  std::vector<double> times;
  std::vector<Complex> values;
  EtaSource source;
  std::map<std::string, std::string> metadata;
};

// Q[lambda, phi] = integral of phi g / (lambda - i w), continued across the
// axis by 2 pi g(-i lambda) phi(-i lambda). Closed form.
Complex pairing_Q(const SpectralDensity& g, Complex lambda, const InitialFunction& phi);
// Quadrature version, for Re lambda > 0 only.
Complex pairing_Q(const SpectralDensity& g, Complex lambda, const InitialFunction& phi, const QuadratureRule& rule);

struct PredictOptions {
  double strip_depth = 3.0;     // a: resonance poles with Re lambda > -a are summed
  bool include_remainder = true;
  double y_max = 2000.0;        // truncation of the line integral on Re lambda = -a
};

struct PredictionDetail {
  std::vector<SpectralRoot> poles;  // eigenvalues and resonance poles used
  double strip_depth;               // after any shift away from a pole
};

// Residue expansion of the linearized order parameter. For rational g the
// pole sum alone is exact; otherwise the line integral over Re lambda = -a
// is added, with the 1/lambda and 1/lambda^2 behaviour subtracted
// analytically so the remaining integrand decays like |y|^-3.
EtaTrajectory predict_eta(const SpectralDensity& g, double K, const InitialFunction& phi,
                          const std::vector<double>& times, PredictOptions opt = {},
                          PredictionDetail* detail = nullptr);

// Integrates dZ/dt = i w Z + (K/2) eta on the quadrature nodes with an
// exponential RK4 step (rotation exact), dt <= 0.5 / max(1, K).
EtaTrajectory direct_integration(const SpectralDensity& g, double K, const InitialFunction& phi,
                                 const std::vector<double>& times, const QuadratureRule& rule, double dt = 0.01);

// Least-squares slope of log|eta| against t over [t0, t1].
double log_slope(const EtaTrajectory& traj, double t0, double t1);

std::vector<double> linspace(double a, double b, int n);

}  // namespace kuramoto
