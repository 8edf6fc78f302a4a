#pragma once

#include "kuramoto/density.hpp"

namespace kuramoto {

enum class Sheet { first, second, boundary };
enum class ResolventMethod { closed_form, quadrature, boundary };

struct ResolventValue {
  Complex lambda;
  Complex value;
  Sheet sheet;
  ResolventMethod method;
};

// A value together with its derivative in lambda.
struct Jet {
  Complex value;
  Complex derivative;
};

// D(lambda) = integral of g(w) / (lambda - i w) on the sheet containing
// lambda (Re lambda != 0), by the given rule.
ResolventValue resolvent_D(const SpectralDensity& g, Complex lambda, const QuadratureRule& rule);
// Same, in closed form (Faddeeva for gaussians, logarithms for piecewise).
ResolventValue resolvent_D(const SpectralDensity& g, Complex lambda);
// Quadrature with resolution doubling until successive values agree to tol.
// Throws QuadratureDivergence if that never happens.
ResolventValue resolvent_D_converged(const SpectralDensity& g, Complex lambda, int resolution, double tol = 1e-10,
                                     int max_doublings = 8);

// (1/pi) p.v. integral of g(w) / (y - w).
double hilbert_transform(const SpectralDensity& g, double y);

// Limit of D(x + i y) as x -> 0+: pi g(y) - i pi hilbert_transform(g, y).
Complex boundary_value(const SpectralDensity& g, double y);

// Continuation of D from the right half-plane: D itself for Re lambda > 0,
// the boundary value on the axis, D + 2 pi g(-i lambda) for Re lambda < 0.
ResolventValue continued_resolvent_F(const SpectralDensity& g, Complex lambda);
// Quadrature route; delegates to the boundary value within 1e-4 of the axis.
ResolventValue continued_resolvent_F(const SpectralDensity& g, Complex lambda, const QuadratureRule& rule);

// Continued resolvent and its lambda-derivative, closed form.
Jet continued_resolvent_jet(const SpectralDensity& g, Complex lambda);

// G(lambda) = 1 - (K/2) F(lambda); its zeros are eigenvalues (Re > 0) and
// resonance poles (Re <= 0) of the linearized dynamics.
Complex characteristic_G(const SpectralDensity& g, double K, Complex lambda);
Complex characteristic_G(const SpectralDensity& g, double K, Complex lambda, const QuadratureRule& rule);
Jet characteristic_jet(const SpectralDensity& g, double K, Complex lambda);

}  // namespace kuramoto
