#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "krein/tolerances.hpp"
#include "krein/linalg.hpp"

namespace krein::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kMalformedInput = 2,
  kInvariantViolation = 3,
  kResolutionRefused = 4,
};

struct RunConfig {
  /// extend | solve-x | classify-model | quasi-basis | verify
  std::string command;
  /// hermite | anharmonic (quasi-basis only)
  std::string family;
  std::filesystem::path input;
  std::filesystem::path output_dir = "krein-out";
  std::uint64_t seed = 1;
  Tolerances tol = kDefaultTolerances;
  unsigned threads = 0;

  int samples = 4;

  double delta = 1.0;
  std::string variant = "both";
  Index truncation = 64;
  Index max_n = Index(1) << 16;

  double a = 0.5;
  Index nmax = 12;
  std::optional<double> L;
  std::optional<Index> nodes;
  double beta = 4.0;
  std::string weight = "rational";
};

/// Throws InvalidInput for inconsistent settings (missing input file,
/// nonpositive tolerances, unknown command).
void validate(const RunConfig& config);

/// Runs one command, writes report files under output_dir and the JSON
/// summary to `out`. Library exceptions propagate.
int run(const RunConfig& config, std::ostream& out);

/// Maps an exception escaping run() to the documented exit code.
int exit_code_for(const std::exception& e);

/// Catches, reports on `err` and maps exceptions.
int run_guarded(const RunConfig& config, std::ostream& out, std::ostream& err);

/// CSV layout of every file the commands write.
std::string csv_help();

}  // namespace krein::cli
