#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace abcrl {

// One row of the `verify` report.
struct CheckReport {
  std::string check;
  int samples = 0;
  double max_gap = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  int prop1_samples = 1000;
  std::uint64_t seed = 12345;
  // Negative control: perturbs the closed form so the oracle must flag it.
  bool corrupt_closed_form = false;
};

// Closed form vs grid-search-plus-refinement minimum on random instances;
// gap must stay within 1e-6.
CheckReport check_prop1(const VerifyOptions& options);

// Sigmoid surrogate of the penalty weight: exact at d = 0, relative error
// <= 1% for |d| <= 0.05 * lambda / mu over a small (lambda, mu) grid.
CheckReport check_sigmoid_approx(const VerifyOptions& options);

// Multiplier update properties: non-negativity on random sequences, finite
// decay to zero under a persistently satisfied constraint, and the exact
// arithmetic spot check.
CheckReport check_lambda_update(const VerifyOptions& options);

std::vector<CheckReport> run_all_checks(const VerifyOptions& options);

}  // namespace abcrl
