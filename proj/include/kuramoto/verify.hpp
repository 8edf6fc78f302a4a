#pragma once

#include <string>
#include <vector>

#include "kuramoto/report.hpp"

namespace kuramoto {

struct Check {
  std::string name;
  std::string anchor;  // which published result the check reproduces
  double computed;
  double expected;
  double tol;
  bool passed;
  std::string note;  // error text when the computation itself failed
};

struct VerifyOptions {
  // Relative perturbation applied to the two-step fixture before checking;
  // any nonzero value of 1e-6 or more must make the suite fail.
  double perturb = 0.0;
};

struct VerifyReport {
  std::vector<Check> checks;
  double K_c_gaussian = 0.0;
  bool all_passed() const;
};

// Runs every golden and property check. Failures are collected, never thrown.
VerifyReport run_verify(VerifyOptions opt = {});

Json to_json(const VerifyReport& r);

}  // namespace kuramoto
