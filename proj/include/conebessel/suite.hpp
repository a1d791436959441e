// SPDX-License-Identifier: Apache-2.0
//
// The acceptance battery: fifteen numbered criteria, each a list of
// verification reports that must all pass.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "conebessel/report.hpp"

namespace conebessel {

struct SuiteOptions {
  /// Ten times fewer Monte Carlo samples.
  bool quick = false;
  std::uint64_t seed = 0;
};

struct CriterionOutcome {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;
  std::vector<VerificationReport> reports;
  double seconds = 0.0;

  Json to_json(bool with_timestamp = true) const;
};

struct SuiteSummary {
  std::vector<CriterionOutcome> criteria;
  int passed = 0;
  int failed = 0;

  bool all_pass() const noexcept { return failed == 0 && !criteria.empty(); }
  Json to_json(bool with_timestamp = true) const;
};

inline constexpr int kCriterionCount = 15;
std::string criterion_name(int id);

/// Runs one criterion (1-based id). Exceptions are caught and reported as
/// a failure.
CriterionOutcome run_criterion(int id, const SuiteOptions& opts);

/// Runs every criterion in order; on_done fires after each one.
SuiteSummary run_suite(const SuiteOptions& opts, const std::function<void(const CriterionOutcome&)>& on_done = {});

}  // namespace conebessel
