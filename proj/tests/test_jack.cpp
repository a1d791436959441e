// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include "conebessel/jack.hpp"
#include "conebessel/rng.hpp"
#include "doctest.h"
#include "jack_oracle.hpp"

using namespace conebessel;

TEST_CASE("jack C against the Laplace-Beltrami oracle, real arguments") {
  RngStream rng(1, 0);
  for (double alpha : {2.0, 1.0, 0.5, 0.7}) {
    for (int n = 1; n <= 3; ++n) {
      std::vector<cd> x;
      for (int i = 0; i < n; ++i) x.emplace_back(rng.uniform(-1.2, 1.5));
      Spectrum s{x, false};
      for (int k = 0; k <= 6; ++k) {
        for (const Partition& lam : partitions_of(k, n)) {
          const cd got = jack_C(lam, alpha, s);
          const cd ref = oracle::jack_C(lam.parts(), alpha, x);
          CHECK(std::abs(got - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
        }
      }
    }
  }
}

TEST_CASE("jack C against the oracle, complex arguments") {
  RngStream rng(2, 0);
  for (double alpha : {2.0, 1.0, 0.5}) {
    std::vector<cd> x;
    for (int i = 0; i < 3; ++i) x.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
    Spectrum s{x, false};
    for (int k = 0; k <= 5; ++k)
      for (const Partition& lam : partitions_of(k, 3)) {
        const cd ref = oracle::jack_C(lam.parts(), alpha, x);
        CHECK(std::abs(jack_C(lam, alpha, s) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
      }
  }
}

TEST_CASE("jack C normalization sums to a power of the trace") {
  const std::vector<cd> x{0.4, -0.3, 1.1};
  const Spectrum s{x, false};
  const cd tr = x[0] + x[1] + x[2];
  for (double alpha : {2.0, 1.0, 0.5})
    for (int k = 0; k <= 7; ++k) {
      cd sum = 0.0;
      for (const Partition& lam : partitions_of(k, 3)) sum += jack_C(lam, alpha, s);
      CHECK(std::abs(sum - std::pow(tr, k)) < 1e-11 * std::max(1.0, std::abs(std::pow(tr, k))));
    }
}

TEST_CASE("jack C with more parts than variables vanishes") {
  const std::vector<cd> x{1.0, 2.0};
  CHECK(jack_C(Partition{1, 1, 1}, 1.0, Spectrum{x, false}) == cd(0.0));
  CHECK(jack_at_ones(Partition{1, 1, 1}, 1.0, 2) == 0.0);
}

TEST_CASE("values at the identity") {
  CHECK(jack_at_ones(Partition{2, 1}, 2.0, 3) == doctest::Approx(18.0).epsilon(1e-13));
  CHECK(jack_at_ones(Partition{1}, 1.0, 4) == doctest::Approx(4.0));
  const std::vector<cd> ones(3, 1.0);
  for (double alpha : {2.0, 1.0, 0.5})
    for (const Partition& lam : partitions_of(4, 3))
      CHECK(jack_at_ones(lam, alpha, 3) ==
            doctest::Approx(oracle::jack_C(lam.parts(), alpha, ones).real()).epsilon(1e-11));
}

TEST_CASE("generalized Pochhammer") {
  CHECK(std::abs(pochhammer_gen(3.0, Partition{2, 1}, 2.0) - cd(3.0 * 4.0 * 2.5)) < 1e-13);
  CHECK(std::abs(pochhammer_gen(1.5, Partition{}, 1.0) - cd(1.0)) < 1e-15);
  CHECK(std::abs(pochhammer_gen(1.0, Partition{1, 1}, 1.0)) < 1e-15);
  const cd mu(0.5, 0.25);
  CHECK(std::abs(pochhammer_gen(mu, Partition{2}, 1.0) - mu * (mu + 1.0)) < 1e-15);
  CHECK(hook_product_upper(Partition{1}, 2.0) == doctest::Approx(2.0));
  CHECK(hook_product_upper(Partition{2}, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("plan evaluation matches the single-partition entry point") {
  const auto plan = jack_plan(2, 1.0, 6);
  REQUIRE(plan->max_degree() >= 6);
  const std::vector<cd> x{0.7, 0.2};
  const std::vector<cd> p = plan->evaluate_all(x, 6);
  for (std::size_t i = 0; i < plan->layer_end(6); ++i) {
    const Partition& lam = plan->partitions()[i];
    const cd c = p[i] * std::exp(plan->log_p_to_c(i));
    CHECK(std::abs(c - jack_C(lam, 1.0, Spectrum{x, false})) < 1e-12);
  }
  CHECK(plan->index_of(Partition{4, 2}) >= 0);
  CHECK(plan->index_of(Partition{1, 1, 1}) == -1);
}
