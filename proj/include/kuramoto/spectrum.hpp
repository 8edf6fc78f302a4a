#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kuramoto/resolvent.hpp"

namespace kuramoto {

// Axis-aligned rectangle in the lambda plane.
struct Window {
  double re_min, re_max, im_min, im_max;
};

using AnalyticFn = std::function<Jet(Complex)>;

struct ZeroCount {
  int count;
  Window window;  // the contour actually used, after any nudging
};

// Winding number of f around the boundary of w, tracked adaptively so that
// no step turns the argument by more than pi/4. If |f| drops below
// zero_tol on the boundary the rectangle is enlarged slightly (at most three
// attempts, never more than 1e-2) before ContourThroughZero is thrown.
// A left edge in the open right half-plane is kept there. Known poles of f
// inside the contour are added back, so the result counts zeros only.
ZeroCount count_zeros(const AnalyticFn& f, Window w, double zero_tol = 1e-6, const std::vector<Complex>& poles = {});
int count_zeros(const SpectralDensity& g, double K, Window w, double zero_tol = 1e-6);

// Poles of the continued characteristic function (the Lorentzian has one).
std::vector<Complex> characteristic_poles(const SpectralDensity& g);

enum class RootKind { eigenvalue, resonance, embedded };

struct SpectralRoot {
  Complex lambda;
  RootKind kind;
  int multiplicity;
  Complex residue;  // f'(lambda); for G this is the expansion coefficient
  double residual;  // |f(lambda)|
};

struct RootSearchOptions {
  int grid_re = 48;
  int grid_im = 48;
  double newton_tol = 1e-10;
  int refinements = 3;
};

struct RootSearchResult {
  std::vector<SpectralRoot> roots;  // sorted by Re lambda, descending
  Window window;                    // contour used for the count
  int contour_count = 0;
  int grid_re = 0, grid_im = 0;     // final seeding grid
};

// Seeds Newton from local minima of |f| on a grid, deduplicates, and
// cross-checks the total multiplicity against count_zeros. Refines the grid
// on disagreement and throws CountMismatch if that does not help.
RootSearchResult find_zeros(const AnalyticFn& f, Window w, RootSearchOptions opt = {},
                            const std::vector<Complex>& poles = {});
RootSearchResult find_roots(const SpectralDensity& g, double K, Window w, RootSearchOptions opt = {});

// G'(lambda_n), the coefficient that enters the residue of 1/G.
// Throws NotARoot if |G(lambda_n)| > 1e-8.
Complex residue_coefficient(const SpectralDensity& g, double K, Complex lambda_n);

struct SimplicityReport {
  bool all_simple = true;
  std::vector<std::size_t> flagged;  // indices with |residue| <= 1e-8
};
SimplicityReport check_simplicity(const std::vector<SpectralRoot>& roots);

struct ContinuationPoint {
  double K;
  Complex lambda;
  Sheet sheet;
};

struct AxisCrossing {
  double K;
  double imag;
  int direction;  // +1 entering the right half-plane as K grows, -1 leaving
};

struct RootPath {
  std::vector<ContinuationPoint> points;
  std::vector<AxisCrossing> crossings;
  bool reached_end = true;  // false if the path left the domain of the continuation
};

// Follows a root of G from K_start to K_end with a tangent predictor and
// Newton corrector, halving the step on trouble. Throws LostRoot when the
// step falls below 1e-6 of the nominal one.
RootPath continue_root_in_K(const SpectralDensity& g, double K_start, double K_end, int steps, Complex seed);

std::string to_string(RootKind kind);

}  // namespace kuramoto
