// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include "conebessel/errors.hpp"
#include "conebessel/laplace.hpp"
#include "conebessel/measures.hpp"
#include "conebessel/quadrature.hpp"
#include "doctest.h"

using namespace conebessel;

namespace {

ConePoint diag(std::vector<double> v, Field f = Field::R) { return ConePoint::diagonal(v, f); }

double beta_volume(const FieldParams& fp, int level) {
  QuadSpec spec;
  spec.level = level;
  return cone_integrate([](const Mat&, const ConeNode&, const ConeQuadrature&) { return 1.0; }, fp, spec).value;
}

}  // namespace

TEST_CASE("quadrature nodes") {
  const FieldParams fp(Field::R, 2);
  const ConeQuadrature unit(fp, ConeDomain::Unit, 2);
  CHECK(!unit.nodes().empty());
  for (const ConeNode& node : unit.nodes()) {
    CHECK(node.eig[0] >= node.eig[1]);
    CHECK(node.eig[1] >= 0.0);
    CHECK(node.eig[0] <= 1.0);
    CHECK(node.comp[0] == doctest::Approx(1.0 - node.eig[0]));
    CHECK(unit.det(node) == doctest::Approx(node.eig[0] * node.eig[1]));
    const Mat x = unit.matrix(node);
    CHECK(x.trace().real() == doctest::Approx(node.eig[0] + node.eig[1]));
  }
  CHECK_THROWS_AS(ConeQuadrature(FieldParams(Field::R, 3), ConeDomain::Unit, 2), ValidationError);
  CHECK_THROWS_AS(ConeQuadrature(fp, ConeDomain::Unit, 20), ValidationError);
  CHECK(default_level(1) == 6);
  CHECK(default_level(2) == 3);
}

TEST_CASE("volume of the unit interval of the cone") {
  CHECK(beta_volume(FieldParams(Field::R, 1), 5) == doctest::Approx(1.0).epsilon(1e-12));
  for (Field f : {Field::R, Field::C}) {
    const FieldParams fp(f, 2);
    const double ref = beta_const(fp, fp.n_over_q(), fp.n_over_q());
    CHECK(beta_volume(fp, 4) == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("quadrature error shrinks with the level") {
  const FieldParams fp(Field::R, 2);
  const double ref = beta_const(fp, 2.0, 2.5);
  std::vector<double> err;
  for (int level = 1; level <= 4; ++level) {
    QuadSpec spec;
    spec.level = level;
    const double v = cone_integrate(
                         [](const Mat&, const ConeNode& n, const ConeQuadrature& q) {
                           return std::sqrt(q.det(n)) * q.det_complement(n);
                         },
                         fp, spec)
                         .value;
    err.push_back(std::abs(v - ref));
  }
  for (std::size_t i = 1; i < err.size(); ++i) CHECK((err[i] <= 0.25 * err[i - 1] || err[i] < 1e-12));
}

TEST_CASE("cone quadrature reproduces the gamma function of the cone") {
  for (Field f : {Field::R, Field::C}) {
    const FieldParams fp(f, 2);
    const double mu = fp.n_over_q() + 0.7;
    QuadSpec spec;
    spec.domain = ConeDomain::Cone;
    spec.radius = laplace_radius(Mat::Identity(2, 2));
    spec.level = 4;
    const QuadResult r = cone_integrate(
        [&](const Mat& x, const ConeNode& n, const ConeQuadrature& q) {
          return std::exp(-x.trace().real()) * std::pow(q.det(n), mu - fp.n_over_q());
        },
        fp, spec);
    CHECK(r.value == doctest::Approx(gamma_omega(fp, mu).real()).epsilon(1e-6));
  }
}

TEST_CASE("singular arguments are rejected") {
  CHECK_THROWS_AS(laplace_radius(diag({1.0, 0.0}).matrix()), DomainError);
  CHECK_THROWS_AS(verify_laplace(2.0, diag({1.0, 0.0}), FieldParams(Field::R, 2)), DomainError);
  CHECK_THROWS_AS(verify_addition(1.0, 1.0, diag({1.0}), diag({1.0}), diag({0.0}), FieldParams(Field::R, 1)),
                  DomainError);
}

TEST_CASE("Laplace transform identities") {
  const FieldParams r1(Field::R, 1), r2(Field::R, 2);
  CHECK(verify_laplace(2.0, diag({1.0}), r1).pass);
  CHECK(verify_laplace(3.3, diag({0.6}), r1).pass);
  CHECK(verify_laplace_mod(2.0, diag({3.0}), diag({1.0}), r1).pass);
  const VerificationReport q2 = verify_laplace(2.0, diag({1.0, 2.0}), r2);
  CHECK(q2.pass);
  CHECK(q2.rel_err < 1e-5);
  CHECK(quad_tolerance("laplace", 1) == 1e-8);
  CHECK_THROWS(quad_tolerance("nonsense", 1));
}

TEST_CASE("addition formula") {
  const FieldParams r1(Field::R, 1);
  CHECK(verify_addition(1.0, 1.0, diag({1.0}), diag({0.0}), diag({1.0}), r1).pass);
  CHECK(verify_addition(1.5, 2.0, diag({0.7}), diag({1.2}), diag({1.3}), r1).pass);
}

TEST_CASE("Sonine formulas") {
  const FieldParams r1(Field::R, 1), r2(Field::R, 2);
  CHECK(sonine_eval(1.0, 1.0, diag({1.0}), r1).pass);
  CHECK(sonine_eval(1.5, 2.0, diag({0.0}), r1).pass);
  CHECK(sonine_phi(1.5, 2.0, diag({1.0}), diag({2.0}), r1).pass);
  const VerificationReport rep = sonine_phi(2.0, 3.0, diag({1.0, 0.5}), diag({1.0, 0.4}), r2, {}, {}, true);
  CHECK(rep.pass);
  CHECK(rep.extra.contains("mixing_measure"));
}

TEST_CASE("mixing measure is a probability measure") {
  for (int q = 1; q <= 2; ++q) {
    const FieldParams fp(Field::R, q);
    const std::vector<double> s(static_cast<std::size_t>(q), 0.8);
    const std::vector<MixingAtom> atoms = mixing_measure(2.0, 3.0, diag(s), fp, q == 1 ? 6 : 3);
    double total = 0.0;
    for (const MixingAtom& a : atoms) {
      CHECK(a.weight >= 0.0);
      total += a.weight;
      // sqrt(s y s) <= s
      CHECK(a.point.norm() <= 0.8 * std::sqrt(static_cast<double>(q)) + 1e-12);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(q == 1 ? 1e-8 : 1e-3));
  }
}

TEST_CASE("polar route") {
  const FieldParams r1(Field::R, 1);
  CHECK(verify_polar_route(1, 3, diag({1.0}), diag({2.0}), r1).pass);
  PolarOptions mc;
  mc.method = PolarMethod::MonteCarlo;
  mc.samples = 50000;
  mc.seed = 3;
  CHECK(verify_polar_route(1, 3, diag({1.0}), diag({2.0}), r1, mc).pass);
  CHECK_THROWS(verify_polar_route(2, 3, diag({1.0}), diag({2.0}), r1));
}

TEST_CASE("projected matrix beta law") {
  const VerificationReport r = verify_beta_projection(2, 1, Field::R, 3, 3, 20000, 4);
  CHECK(r.pass);
  CHECK(r.rel_err == r.abs_err);
  const VerificationReport c = verify_beta_projection(2, 1, Field::C, 2, 3, 20000, 5);
  CHECK(c.pass);
}
