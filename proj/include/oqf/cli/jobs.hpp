#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "oqf/cli/config.hpp"

namespace oqf::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidInput = 1,
  kPhysicsError = 2,
  kVerificationFailed = 3,
};

struct JobOutput {
  std::string csv;
  bool verificationFailed = false;
};

/// Runs one job and returns its CSV. Library exceptions propagate.
JobOutput run_job(const JobConfig& config);

struct Invocation {
  Command command = Command::Verify;
  std::string configPath;
  std::optional<std::string> outPath;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

/// Loads the config, applies command-line overrides, runs the job and writes
/// the CSV to --out, the configured output, or `out`. Diagnostics go to `err`.
int execute(const Invocation& invocation, std::ostream& out, std::ostream& err);

}  // namespace oqf::cli
