#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "bgkmix/app/config.hpp"

namespace bgkmix::app {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Measured values against their thresholds.
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Criterion ids to run; empty runs all nine.
  std::set<int> only;
  /// > 0 replaces the thread count of the config.
  int threads = 0;
  /// Progress lines; null for silence.
  std::ostream* log = nullptr;
  /// Scratch directory for the reproducibility runs; empty uses the system temp dir.
  std::string scratch;
};

inline constexpr int kCriterionCount = 9;

/// Runs the acceptance criteria on the scenario and tolerances of `config`.
/// A criterion whose computation throws is reported as failed with the error.
std::vector<CriterionResult> run_acceptance(const RunConfig& config, const AcceptanceOptions& options = {});

/// One line per criterion: "criterion <id> <PASS|FAIL> <name>: <detail> (<seconds> s)".
std::string format_line(const CriterionResult& result);

}  // namespace bgkmix::app
