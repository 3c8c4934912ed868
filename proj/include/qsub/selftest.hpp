#pragma once

#include "qsub/io.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qsub {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  /// Measured values and thresholds; deterministic for a fixed seed.
  Json details;
  /// Wall-clock time; not part of the artifact.
  double seconds = 0.0;
};

struct SelftestOptions {
  std::uint64_t seed = 20240917;
};

inline constexpr int kCriterionCount = 11;

/// Runs criterion `id` in 1..kCriterionCount. Criterion 11 re-runs every
/// seeded criterion and compares the serialized artifacts.
CriterionResult run_criterion(int id, const SelftestOptions& opts);

/// Runs all criteria in order; `on_result` is called as each finishes.
std::vector<CriterionResult> run_selftest(const SelftestOptions& opts,
                                          const std::function<void(const CriterionResult&)>& on_result = {});

/// {"seed", "criteria": [{id, name, pass, details}]}, without timings.
Json selftest_artifact(const SelftestOptions& opts, const std::vector<CriterionResult>& results);

/// One line: "criterion  4 FAIL  continuous correction bound  (12.3 s)".
std::string summary_line(const CriterionResult& r);

}  // namespace qsub
