#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vexp {

// Deliberate defects, reachable only through these flags, used to prove the
// suites are not vacuous: each one must trip at least one property.
struct MutationFlags {
  bool skip_filter_normalization = false;
  bool break_lambda_inf_convention = false;
};

struct VerifyOptions {
  double grid_half_length = 2.0;
  int grid_points = 1024;
  double tol_inner = 1e-10;
  double tol_outer = 1e-8;
  std::uint64_t seed = 42;
  int samples = 50;
  std::vector<std::string> suites{"all"};
  MutationFlags mutations;
};

// One row of the report. worst_margin is the smallest slack seen across the
// samples; a negative margin is a failure. Optimizer-heavy properties cap
// their own sample counts (the row records the count actually run).
struct PropertyResult {
  std::string suite;
  std::string property;
  int samples = 0;
  int failures = 0;
  double worst_margin = 0.0;
};

std::vector<PropertyResult> run_verify(const VerifyOptions& opts);

int total_failures(const std::vector<PropertyResult>& results);

// CSV with a fixed header and fixed float formatting; byte-identical for
// identical options.
std::string verify_report_csv(const std::vector<PropertyResult>& results);

}  // namespace vexp
