// SPDX-License-Identifier: Apache-2.0
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/hypergeometric_0F1.hpp>
#include <cmath>
#include <utility>
#include <vector>

#include "conebessel/dunkl.hpp"
#include "conebessel/errors.hpp"
#include "conebessel/field.hpp"
#include "doctest.h"

using namespace conebessel;

TEST_CASE("0F0 reductions") {
  const CVec xi{0.7, -0.2, 0.4};
  const CVec zero(3, 0.0);
  const CVec ones(3, 1.0);
  for (double alpha : {2.0, 1.0, 0.5}) {
    CHECK(hyp0F0(xi, zero, alpha).value == cd(1.0));
    CHECK(std::abs(hyp0F0(xi, ones, alpha).value - std::exp(0.9)) < 1e-13);
  }
  const CVec a{1.3}, b{-0.6};
  CHECK(std::abs(hyp0F0(a, b, 1.0).value - std::exp(-0.78)) < 1e-14);
  CHECK_THROWS_AS(hyp0F0(a, xi, 1.0), ValidationError);
}

TEST_CASE("0F1 in one variable matches boost") {
  for (double mu : {0.7, 1.5, 4.0})
    for (double z : {-3.0, -0.5, 0.8, 2.5}) {
      const CVec a{z}, b{1.0};
      CHECK(hyp0F1(mu, a, b, 2.0).value.real() ==
            doctest::Approx(boost::math::hypergeometric_0F1(mu, z)).epsilon(1e-13));
    }
}

TEST_CASE("type A is symmetric in its arguments") {
  const CVec xi{0.9, 0.3}, eta{-0.4, 1.1};
  const cd ab = dunkl_bessel_A(0.5, xi, eta).value;
  const cd ba = dunkl_bessel_A(0.5, eta, xi).value;
  CHECK(std::abs(ab - ba) < 1e-14);
  CHECK_THROWS_AS(dunkl_bessel_A(0.0, xi, eta), ValidationError);
}

TEST_CASE("type B at an imaginary argument in rank one is the normalized Bessel function") {
  for (double k1 : {0.0, 0.5, 1.3}) {
    const MultiplicityB k(k1, 1.0);
    const double nu = k1 - 0.5;
    for (double z : {0.5, 2.0, 4.5}) {
      const std::vector<double> xi{z}, eta{1.0};
      const double ref = std::tgamma(nu + 1.0) * std::pow(0.5 * z, -nu) * boost::math::cyl_bessel_j(nu, z);
      CHECK(dunkl_bessel_B_imag(k, xi, eta).value.real() == doctest::Approx(ref).epsilon(1e-12));
      const CVec xc{z}, ec{cd(0.0, 1.0)};
      CHECK(std::abs(dunkl_bessel_B(k, xc, ec).value - ref) < 1e-12);
    }
  }
}

TEST_CASE("type B is invariant under sign changes and permutations") {
  const MultiplicityB k(0.8, 0.5);
  const std::vector<double> xi{1.0, 0.5}, eta{0.7, 0.2};
  const cd base = dunkl_bessel_B_imag(k, xi, eta).value;
  CHECK(std::abs(dunkl_bessel_B_imag(k, std::vector<double>{-1.0, 0.5}, eta).value - base) < 1e-14);
  CHECK(std::abs(dunkl_bessel_B_imag(k, std::vector<double>{0.5, 1.0}, eta).value - base) < 1e-14);
  CHECK(std::abs(dunkl_bessel_B_imag(k, xi, std::vector<double>{0.2, -0.7}).value - base) < 1e-14);
  const std::vector<double> zero{0.0, 0.0};
  CHECK(dunkl_bessel_B_imag(k, xi, zero).value == cd(1.0));
}

TEST_CASE("geometric multiplicity") {
  const MultiplicityB k = MultiplicityB::geometric(3.0, 2, 2);
  CHECK(k.k1 == doctest::Approx(1.5));
  CHECK(k.k2 == doctest::Approx(1.0));
  CHECK(k.mu(2) == doctest::Approx(3.0));
  CHECK_THROWS_AS(MultiplicityB(-0.1, 1.0), ValidationError);
}

TEST_CASE("Harish-Chandra and Dunkl character integrals") {
  const std::vector<double> xi{1.0, 0.5}, eta{0.7, 0.2};
  for (Field f : {Field::R, Field::C}) {
    const FieldParams fp(f, 2);
    CHECK(verify_harish_chandra(fp, xi, eta, 20000, 3).pass);
    CHECK(verify_dunklchar(3.0, fp, xi, eta, 20000, 4).pass);
  }
}

TEST_CASE("type B to type A limit decreases") {
  const FieldParams fp(Field::R, 2);
  const std::vector<double> xi{1.0, 0.5}, b{0.3, 0.1}, mus{32.0, 64.0, 128.0};
  const std::vector<RateRow> rows = b_to_a_limit(fp, xi, b, mus);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].error < rows[0].error);
  CHECK(rows[2].error < rows[1].error);
}

TEST_CASE("rank two example") {
  CHECK(example_q2_psi(1.0, 1.0) == 1.0);
  for (const auto& [a, b] : std::vector<std::pair<double, double>>{{1.0, 0.5}, {1.5, 0.2}, {2.0, 1.0}}) {
    const double quad = example_q2_psi(a, b);
    CHECK(quad == doctest::Approx(boost::math::cyl_bessel_j(0.0, a * a - b * b)).epsilon(1e-12));
    CHECK(std::abs(example_q2_series(a, b).value - quad) < 1e-10);
  }
  CHECK_THROWS_AS(example_q2_psi(0.5, 1.0), ValidationError);
  const std::vector<std::pair<double, double>> grid{{0.5, 0.1}, {1.0, 0.4}, {1.8, 1.2}};
  CHECK(verify_example_q2(grid).pass);
}

TEST_CASE("degenerate product formula") {
  const std::vector<double> xi{0.8, 0.3}, eta{0.6, 0.2}, b{0.5, 0.2};
  const VerificationReport rep = verify_degenerate_product(FieldParams(Field::C, 2), xi, eta, b, 20000, 5);
  CHECK(rep.pass);
  const std::vector<double> zero{0.0, 0.0};
  const VerificationReport triv = verify_degenerate_product(FieldParams(Field::R, 2), xi, eta, zero, 2000, 5);
  CHECK(std::abs(triv.lhs - cd(1.0)) < 1e-14);
}
