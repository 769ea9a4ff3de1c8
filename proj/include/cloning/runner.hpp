#pragma once

// Experiment dispatch behind the command-line tool.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "cloning/analysis.hpp"

namespace cloning {

/// Bad flags, config values or I/O; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
  /// One of the subcommand names; `report` runs `experiment`.
  std::string command;
  std::string system = "V";
  std::string experiment;
  int n = 3;
  int radius = 3;
  int m = 5;
  int depth = 12;
  long budget = 500;
  std::uint64_t seed = 1;
  std::string out;
  bool exhaustive = false;
  std::string element;
  std::string property;
  bool one_sided = false;
  bool timing = false;
};

/// Seed from CLONING_SEED, or 1.
std::uint64_t default_seed();

/// Overlays keys of a JSON config file onto `cfg`. Throws ConfigError.
void load_config_file(const std::string& path, RunConfig& cfg);

/// Throws ConfigError on an unknown command, system, or out-of-range value.
void validate(const RunConfig& cfg);

/// Validates, then runs. Deterministic for a fixed config and seed.
ExperimentReport run(const RunConfig& cfg);

/// JSON with experiment, system, params, seed, series, witnesses, verdict,
/// label, notes, runtime_ms and schema_version.
std::string emit_report(const ExperimentReport& report);

/// Inverse of emit_report. Throws ConfigError.
ExperimentReport parse_report(const std::string& json);

/// Runs, writes the report to cfg.out or stdout, returns the exit code
/// (0 pass, 1 property violated, 2 usage or I/O error).
int run_and_emit(const RunConfig& cfg);

}  // namespace cloning
