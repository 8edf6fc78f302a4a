#pragma once

#include <stdexcept>
#include <string>

namespace kuramoto {

// Failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  invalid_argument,
  unsupported_continuation,
  pole_hit,
  breakpoint_hit,
  quadrature_divergence,
  contour_through_zero,
  newton_divergence,
  count_mismatch,
  not_a_root,
  lost_root,
  no_transition,
  pole_on_strip_boundary,
  step_too_large,
  mode_bound_violation,
  not_even_unimodal,
  zero_curvature,
  config_error,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}
  ErrorKind kind() const noexcept { return kind_; }
  // Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::unsupported_continuation: return "UnsupportedContinuation";
    case ErrorKind::pole_hit: return "PoleHit";
    case ErrorKind::breakpoint_hit: return "BreakpointHit";
    case ErrorKind::quadrature_divergence: return "QuadratureDivergence";
    case ErrorKind::contour_through_zero: return "ContourThroughZero";
    case ErrorKind::newton_divergence: return "NewtonDivergence";
    case ErrorKind::count_mismatch: return "CountMismatch";
    case ErrorKind::not_a_root: return "NotARoot";
    case ErrorKind::lost_root: return "LostRoot";
    case ErrorKind::no_transition: return "NoTransition";
    case ErrorKind::pole_on_strip_boundary: return "PoleOnStripBoundary";
    case ErrorKind::step_too_large: return "StepTooLarge";
    case ErrorKind::mode_bound_violation: return "ModeBoundViolation";
    case ErrorKind::not_even_unimodal: return "NotEvenUnimodal";
    case ErrorKind::zero_curvature: return "ZeroCurvature";
    case ErrorKind::config_error: return "ConfigError";
  }
  return "Error";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace kuramoto
