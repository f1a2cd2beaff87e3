#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mockq {

struct Failure {
  std::string inputs;  // enough to re-run the case on its own
  double residual = 0.0;
  friend bool operator==(const Failure&, const Failure&) = default;
};

/// Outcome of one verification suite.
struct IdentityReport {
  std::string suite;
  std::uint64_t seed = 0;
  long cases = 0;
  double tolerance = 0.0;
  double max_residual = 0.0;
  std::vector<Failure> failures;
  std::int64_t wall_time_ms = 0;

  bool passed() const { return failures.empty() && max_residual <= tolerance; }

  /// Folds one case in: updates max_residual and records a failure when the
  /// residual exceeds the tolerance or is not finite.
  void record(double residual, const std::string& inputs);
  /// Records a case that could not be evaluated at all.
  void record_error(const std::string& inputs, const std::string& what);

  friend bool operator==(const IdentityReport&, const IdentityReport&) = default;
};

}  // namespace mockq
