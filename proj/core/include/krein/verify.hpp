#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "krein/tolerances.hpp"

namespace krein::verify {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  /// Worst residual or count observed by the check.
  double value = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = 20240601;
  Tolerances tol = kDefaultTolerances;
  /// 0: hardware concurrency capped by KREIN_LAB_THREADS.
  unsigned threads = 0;
};

/// Thread count from KREIN_LAB_THREADS (if set and positive), capped by
/// hardware concurrency when `requested` is zero.
unsigned thread_budget(unsigned requested = 0);

/// Names of all registered checks, in report order.
std::vector<std::string> check_names();

/// Runs every invariant check; results come back in registration order.
std::vector<CheckResult> run_verify(const Options& options = {});

}  // namespace krein::verify
