// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <tuple>
#include <vector>

#include "conebessel/errors.hpp"
#include "conebessel/measures.hpp"
#include "conebessel/quadrature.hpp"
#include "conebessel/rng.hpp"
#include "doctest.h"

using namespace conebessel;

TEST_CASE("Haar unitaries are unitary") {
  RngStream rng(1, 0);
  for (Field f : {Field::R, Field::C})
    for (int p = 1; p <= 5; ++p) {
      const FieldParams fp(f, p);
      const RectMatrix u = haar_unitary(p, fp, rng);
      CHECK((u.entries.adjoint() * u.entries - Mat::Identity(p, p)).norm() < 1e-12);
      Mat frame;
      haar_frame(p + 2, p, f, rng, frame);
      CHECK(frame.rows() == p + 2);
      CHECK((frame.adjoint() * frame - Mat::Identity(p, p)).norm() < 1e-12);
      if (f == Field::R) CHECK(u.entries.imag().norm() == 0.0);
    }
}

TEST_CASE("Haar entry distribution") {
  // |u_11|^2 ~ Beta(d/2, (p-1)d/2) for u Haar in U_p(F).
  for (Field f : {Field::R, Field::C}) {
    const FieldParams fp(f, 3);
    RngStream rng(2, 0);
    std::vector<double> v;
    for (int i = 0; i < 4000; ++i) v.push_back(std::norm(haar_unitary(3, fp, rng).entries(0, 0)));
    const double a = 0.5 * fp.d, b = 0.5 * fp.d * 2;
    const KsResult ks = ks_distance(v, [&](double x) { return boost::math::ibeta(a, b, std::clamp(x, 0.0, 1.0)); });
    CHECK(ks.p_value > 1e-3);
  }
}

TEST_CASE("gamma function of the cone") {
  CHECK(gamma_omega(FieldParams(Field::R, 2), 2.0).real() == doctest::Approx(2.2214414690791831).epsilon(1e-13));
  CHECK(gamma_omega(FieldParams(Field::R, 1), 3.5).real() == doctest::Approx(std::tgamma(3.5)).epsilon(1e-13));
  const FieldParams c2(Field::C, 2);
  CHECK(std::exp(log_gamma_omega(c2, 3.2)) == doctest::Approx(gamma_omega(c2, 3.2).real()).epsilon(1e-12));
  CHECK(std::abs(complex_gamma(cd(0.5, 0.0)) - std::sqrt(M_PI)) < 1e-13);
  CHECK(std::abs(complex_gamma(cd(-1.5, 0.0)) - 4.0 * std::sqrt(M_PI) / 3.0) < 1e-12);
  const cd z(1.2, 0.7);
  CHECK(std::abs(complex_gamma(z + 1.0) - z * complex_gamma(z)) < 1e-13);
  const FieldParams r2(Field::R, 2);
  CHECK(beta_const(r2, 2.0, 3.0) ==
        doctest::Approx(gamma_omega(r2, 2.0).real() * gamma_omega(r2, 3.0).real() / gamma_omega(r2, 5.0).real())
            .epsilon(1e-12));
  CHECK(beta_const(FieldParams(Field::R, 1), 2.0, 3.0) == doctest::Approx(boost::math::beta(2.0, 3.0)));
}

TEST_CASE("beta density integrates to one") {
  for (Field f : {Field::R, Field::C}) {
    const FieldParams fp(f, 2);
    const double mu = fp.n_over_q() + 0.5, nu = fp.n_over_q() + 1.0;
    const BetaParams bp(fp, mu, nu);
    QuadSpec spec;
    spec.level = 4;
    const QuadResult r = cone_integrate(
        [&](const Mat&, const ConeNode& node, const ConeQuadrature&) {
          return beta_density_spectral(std::vector<double>{node.eig[0], node.eig[1]}, bp);
        },
        fp, spec);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-5));
  }
  const BetaParams b1(FieldParams(Field::R, 1), 2.0, 3.0);
  CHECK(beta_density_spectral(std::vector<double>{0.3}, b1) ==
        doctest::Approx(0.3 * 0.49 / boost::math::beta(2.0, 3.0)).epsilon(1e-13));
  CHECK(beta_density_spectral(std::vector<double>{1.3}, b1) == 0.0);
}

TEST_CASE("scalar beta sampler") {
  const BetaParams bp(FieldParams(Field::R, 1), 1.7, 0.6);
  RngStream rng(3, 0);
  std::vector<double> v;
  for (int i = 0; i < 5000; ++i) v.push_back(sample_beta(bp, rng).matrix()(0, 0).real());
  const KsResult ks = ks_distance(v, [](double x) { return boost::math::ibeta(1.7, 0.6, std::clamp(x, 0.0, 1.0)); });
  CHECK(ks.p_value > 1e-3);
}

TEST_CASE("matrix beta samplers have the right mean") {
  // E[y] = mu / (mu + nu) I.
  for (const auto& [f, mu, nu] : {std::tuple{Field::R, 1.5, 2.0}, std::tuple{Field::R, 1.7, 2.2},
                                  std::tuple{Field::C, 2.0, 3.0}, std::tuple{Field::C, 2.3, 2.6}}) {
    const FieldParams fp(f, 2);
    const BetaParams bp(fp, mu, nu);
    RngStream rng(4, 0);
    Mat sum = Mat::Zero(2, 2);
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      const ConePoint y = sample_beta(bp, rng);
      sum += y.matrix();
      const EigenSystem es = eigen_decompose(y.herm());
      CHECK(es.values[0] < 1.0 + 1e-12);
      CHECK(es.values[1] > -1e-12);
    }
    sum /= static_cast<double>(n);
    const double m = mu / (mu + nu);
    CHECK((sum - m * Mat::Identity(2, 2)).norm() < 0.01);
  }
}

TEST_CASE("Cholesky construction and block projection") {
  RngStream rng(5, 0);
  const ConePoint y = sample_matrix_beta(3, Field::C, 3, 4, rng);
  CHECK(y.rank() == 3);
  const ConePoint b = project_block(y, 2);
  CHECK(b.rank() == 2);
  CHECK((b.matrix() - y.matrix().topLeftCorner(2, 2)).norm() == 0.0);
  CHECK_THROWS(project_block(y, 4));
}

TEST_CASE("Wishart mean") {
  const FieldParams fp(Field::C, 2);
  Mat s(2, 2);
  s << 1.0, cd(0.3, 0.1), cd(0.3, -0.1), 0.5;
  const ConePoint sigma(HermMatrix(s, Field::C));
  RngStream rng(6, 0);
  Mat sum = Mat::Zero(2, 2);
  const int n = 20000;
  for (int i = 0; i < n; ++i) sum += wishart_sample(fp, 5, sigma, rng).matrix();
  sum /= static_cast<double>(n);
  CHECK((sum - 5.0 * s).norm() < 0.1);
}

TEST_CASE("Kolmogorov-Smirnov helper") {
  RngStream rng(7, 0);
  std::vector<double> u;
  for (int i = 0; i < 2000; ++i) u.push_back(rng.uniform());
  auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_distance(u, uniform_cdf).p_value > 1e-3);
  std::vector<double> shifted;
  for (double x : u) shifted.push_back(0.8 * x);
  CHECK(ks_distance(shifted, uniform_cdf).p_value < 1e-6);
  CHECK(kolmogorov_survival(0.0) == doctest::Approx(1.0));
  CHECK(kolmogorov_survival(1.36) == doctest::Approx(0.049).epsilon(0.02));
  CHECK_THROWS_AS(ks_distance(std::vector<double>(10, 0.5), uniform_cdf), ValidationError);
}

TEST_CASE("samplers are deterministic in the seed") {
  const FieldParams fp(Field::C, 2);
  RngStream a(9, 3), b(9, 3);
  CHECK((wishart_sample(fp, 3, ConePoint::identity(2, Field::C), a).matrix() -
         wishart_sample(fp, 3, ConePoint::identity(2, Field::C), b).matrix())
            .norm() == 0.0);
}
