#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wmvt {

struct SuiteFailure {
  int case_index = 0;
  std::string inputs;
  std::string expected;
  std::string got;
  double residual = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int cases = 0;
  /// Random draws rejected before reaching a case (e.g. irregular systems).
  int discarded = 0;
  /// Largest gap or residual among the checks the suite ran.
  double max_gap = 0.0;
  /// The suite's headline tolerance.
  double tolerance = 0.0;
  std::vector<SuiteFailure> failures;  // sorted by case index
  double wall_time_ms = 0.0;

  bool pass() const { return failures.empty(); }
};

/// cauchy, taylor, divdiff_mvt, ratz_russel, recursion, vanishing, theorem2,
/// oracle_dets, divdiff_equiv.
const std::vector<std::string>& suite_names();

/// Runs `cases` cases (closed-form cases first, then seeded random draws).
/// Deterministic in (name, seed, cases) apart from wall time. Throws
/// std::invalid_argument for an unknown suite name.
SuiteReport run_suite(std::string_view name, std::uint64_t seed, int cases);

}  // namespace wmvt
