#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "bgkmix/app/config.hpp"

namespace bgkmix::app {

struct RunOverrides {
  /// > 0 replaces the thread count of the config.
  int threads = 0;
  /// Progress lines; null for silence.
  std::ostream* log = nullptr;
};

struct RunResult {
  std::filesystem::path out;
  std::size_t steps = 0;
  double time = 0.0;
  /// Contents of summary.json.
  std::string summary_json;
};

/// Executes the scenario and writes into `out`:
///   timeseries.csv, moments_1.csv, moments_2.csv, exchange.csv,
///   picard.csv (picard integrator), summary.json, plot.gp and checkpoints/.
/// Throws ConfigError, NumericalError (message carries time and step) or IoError.
RunResult run_scenario(const RunConfig& config, const std::filesystem::path& out, const RunOverrides& overrides = {});

/// Continues a splitting run from a checkpoint written by run_scenario. The
/// default output directory is the run directory the checkpoint belongs to;
/// per-node CSVs found there are cut back to the checkpoint step before
/// appending, so the finished directory matches an uninterrupted run.
RunResult resume_scenario(const std::filesystem::path& checkpoint, const std::filesystem::path& out = {},
                          const RunOverrides& overrides = {});

/// Directory resume_scenario writes to when no output directory is given.
std::filesystem::path default_resume_directory(const std::filesystem::path& checkpoint);

}  // namespace bgkmix::app
