#pragma once

#include <optional>
#include <vector>

#include "kuramoto/spectrum.hpp"

namespace kuramoto {

// Zeros of the Hilbert transform of g on the support, sorted. Brackets never
// straddle a breakpoint, where the transform may jump through infinity.
std::vector<double> critical_ordinates(const SpectralDensity& g);

// Couplings 2 / (pi g(y)) at the critical ordinates with g(y) > 0, ascending,
// duplicates removed.
std::vector<double> candidate_couplings(const SpectralDensity& g, const std::vector<double>& ordinates);

// Smallest candidate coupling. Throws NoTransition if there is none.
double transition_point(const SpectralDensity& g);

struct InstabilityWindow {
  double lo;
  double hi;
  bool open_above;  // unstable all the way up to the scanned K_max
  int max_count;    // most eigenvalues seen inside the window
};

struct WindowScanOptions {
  int grid_points = 600;
  double re_floor = 1e-6;  // left edge of the counting rectangle
  double tolerance = 1e-6; // bisection tolerance on the endpoints
};

// Number of zeros of G with Re lambda > re_floor.
int count_eigenvalues(const SpectralDensity& g, double K, double re_floor = 1e-6);

// Maximal K-intervals in (0, K_max] where an eigenvalue exists.
std::vector<InstabilityWindow> instability_windows(const SpectralDensity& g, double K_max, WindowScanOptions opt = {});

struct TransitionReport {
  std::vector<double> critical_ys;
  std::vector<double> candidate_Ks;
  double K_c;
  std::optional<double> kuramoto_point;  // 2/(pi g(0)) when g is even and unimodal
  std::vector<InstabilityWindow> windows;
};

TransitionReport analyze_transition(const SpectralDensity& g, double K_max, WindowScanOptions opt = {});

}  // namespace kuramoto
