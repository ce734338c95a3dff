#pragma once

#include <string>
#include <vector>

#include "orlicz/young.hpp"

namespace orlicz {

// One fitted closed-form example: the derived function's asymptotic shape on
// x in [10, 10^3] against the analytic formula.
struct GoldenFitResult {
  std::string id;        // nu-1..nu-6, pi-1..pi-6
  std::string formula;   // analytic target
  bool stretched = false;
  bool has_log_power = false;
  double expected_exponent = 0.0;
  double fitted_exponent = 0.0;
  double expected_log_power = 0.0;
  double fitted_log_power = 0.0;
  bool pass = false;  // exponent within 0.05, log power within 0.15
};

// Evaluates all 12 closed-form examples with fixed representative parameter
// choices and returns the fit-vs-formula table.
std::vector<GoldenFitResult> run_golden_examples();

}  // namespace orlicz
