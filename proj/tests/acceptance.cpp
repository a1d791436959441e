// SPDX-License-Identifier: Apache-2.0
//
// Runs every acceptance criterion at full scale and prints one line each.
// Usage: acceptance [seed]
#include <cstdio>
#include <cstdlib>
#include <string>

#include "conebessel/suite.hpp"

int main(int argc, char** argv) {
  conebessel::SuiteOptions opts;
  if (argc > 1) opts.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  for (int id = 1; id <= conebessel::kCriterionCount; ++id) {
    const conebessel::CriterionOutcome c = conebessel::run_criterion(id, opts);
    if (!c.pass) ++failed;
    std::printf("criterion %2d %-32s %s  (%s, %.1f s)\n", id, c.name.c_str(), c.pass ? "PASS" : "FAIL",
                c.summary.c_str(), c.seconds);
    for (const auto& r : c.reports)
      if (!r.pass) std::printf("    failing report: %s\n", r.to_json(false).dump().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", conebessel::kCriterionCount - failed, conebessel::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
