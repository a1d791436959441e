// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <vector>

#include "conebessel/errors.hpp"
#include "conebessel/hypergroup.hpp"
#include "conebessel/measures.hpp"
#include "conebessel/rng.hpp"
#include "doctest.h"

using namespace conebessel;

namespace {

ConePoint diag(std::vector<double> v, Field f) { return ConePoint::diagonal(v, f); }

double trace_sq_variance(double mu, const FieldParams& fp, const ConePoint& r, const ConePoint& s) {
  const McEstimate m1 =
      convolution_expectation(r, s, mu, fp, 40000, 11, [](const Mat& z2) { return z2.trace(); });
  const McEstimate m2 = convolution_expectation(r, s, mu, fp, 40000, 11, [](const Mat& z2) {
    const cd t = z2.trace();
    return t * t;
  });
  return m2.value.real() - std::norm(m1.value);
}

}  // namespace

TEST_CASE("ball kernel routes") {
  const FieldParams r2(Field::R, 2);
  CHECK(BallKernel(r2, 2.0).route() == BallRoute::Density);
  CHECK(BallKernel(r2, 2.0).exponent() == doctest::Approx(2.0 - 2.5));
  const BallKernel boundary(r2, 1.5);
  CHECK(boundary.route() == BallRoute::HaarBlock);
  CHECK(boundary.haar_rank() == 3);
  CHECK(BallKernel(r2, 1.0).route() == BallRoute::HaarBlock);
  CHECK_THROWS_AS(BallKernel(r2, 0.75), DomainError);
  CHECK_THROWS_AS(BallKernel(FieldParams(Field::H, 1), 4.0), ValidationError);
  CHECK(BallKernel(FieldParams(Field::C, 2), 3.5).route() == BallRoute::Density);
  CHECK(BallKernel(FieldParams(Field::C, 2), 3.0).route() == BallRoute::HaarBlock);
}

TEST_CASE("uniform ball proposals stay in the ball") {
  for (Field f : {Field::R, Field::C}) {
    const FieldParams fp(f, 2);
    RngStream rng(1, 0);
    Mat w;
    for (int i = 0; i < 200; ++i) {
      CHECK(uniform_ball(fp, rng, w) >= 1);
      CHECK(RectMatrix{w, f}.in_ball());
      CHECK(ball_defect(w) > 0.0);
      Mat i2 = Mat::Identity(2, 2) - w.adjoint() * w;
      CHECK(ball_defect(w) == doctest::Approx(i2.determinant().real()).epsilon(1e-12));
    }
  }
}

TEST_CASE("rank one ball sampler gives a scalar beta law for w^2") {
  const double mu = 2.5;
  RngStream rng(2, 0);
  const BallSample bs = sample_ball(FieldParams(Field::R, 1), mu, 4000, rng);
  REQUIRE(bs.draws.size() == 4000);
  CHECK(bs.acceptance_rate > 0.0);
  std::vector<double> w2;
  for (const RectMatrix& w : bs.draws) w2.push_back(std::norm(w.entries(0, 0)));
  const KsResult ks =
      ks_distance(w2, [&](double x) { return boost::math::ibeta(0.5, mu - 0.5, std::clamp(x, 0.0, 1.0)); });
  CHECK(ks.p_value > 1e-3);
  CHECK_THROWS_AS(sample_ball(FieldParams(Field::R, 1), 1.2, 10, rng), DomainError);
}

TEST_CASE("rank one normalizing constant") {
  for (double mu : {1.5, 2.5, 4.0}) {
    const McEstimate k = kappa_mu(FieldParams(Field::R, 1), mu, 100000, 3);
    const double ref = 1.0 / boost::math::beta(0.5, mu - 0.5);
    CHECK(std::abs(k.value.real() - ref) < 5.0 * k.std_error + 1e-12);
  }
  CHECK_THROWS_AS(kappa_mu(FieldParams(Field::R, 2), 1.5, 1000, 3), DomainError);
}

TEST_CASE("convolution with the origin is a point mass") {
  const FieldParams fp(Field::C, 2);
  Mat rm(2, 2);
  rm << 1.0, cd(0.2, 0.1), cd(0.2, -0.1), 0.5;
  const ConePoint r(HermMatrix(rm, Field::C));
  const ConvolutionSample cs = convolve_points(r, ConePoint::zero(2, Field::C), 3.5, fp, 50, 4);
  REQUIRE(!cs.points.empty());
  double total = 0.0;
  for (std::size_t i = 0; i < cs.points.size(); ++i) {
    CHECK((cs.points[i].matrix() - rm).norm() == 0.0);
    total += cs.weights[i];
  }
  CHECK(total == doctest::Approx(1.0));
  const ConvolutionSample sc = convolve_points(ConePoint::zero(2, Field::C), r, 3.5, fp, 50, 4);
  CHECK((sc.points.front().matrix() - rm).norm() == 0.0);
}

TEST_CASE("convolution weights are normalized and points are in the cone") {
  const FieldParams fp(Field::R, 2);
  const ConvolutionSample cs = convolve_points(diag({1.0, 0.5}, Field::R), diag({0.8, 0.3}, Field::R), 2.2, fp, 3000, 5);
  double total = 0.0;
  for (std::size_t i = 0; i < cs.points.size(); ++i) {
    total += cs.weights[i];
    CHECK(cs.weights[i] >= 0.0);
    CHECK(eigen_decompose(cs.points[i].herm()).values[1] >= -1e-12);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mean of the square is the sum of squares") {
  for (Field f : {Field::R, Field::C}) {
    const FieldParams fp(f, 2);
    const ConePoint r = diag({1.0, 0.5}, f), s = diag({0.8, 0.3}, f);
    for (double mu : {fp.ball_bound() + 0.4, fp.d * 2.0}) {
      const McEstimate m = convolution_expectation(r, s, mu, fp, 40000, 6, [](const Mat& z2) { return z2(0, 0); });
      CHECK(std::abs(m.value - cd(1.64)) < 5.0 * m.std_error + 1e-12);
    }
  }
}

TEST_CASE("convolution is commutative in distribution") {
  const FieldParams fp(Field::R, 2);
  const ConePoint r = diag({1.0, 0.5}, Field::R);
  Mat sm(2, 2);
  sm << 0.6, 0.2, 0.2, 0.4;
  const ConePoint s(HermMatrix(sm, Field::R));
  auto f = [](const Mat& z2) { return std::exp(-(z2 * z2).trace()); };
  const McEstimate a = convolution_expectation(r, s, 2.5, fp, 40000, 7, f);
  const McEstimate b = convolution_expectation(s, r, 2.5, fp, 40000, 8, f);
  CHECK(std::abs(a.value - b.value) < 5.0 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("convolution concentrates as mu grows") {
  const FieldParams fp(Field::R, 2);
  const ConePoint r = diag({1.0, 0.5}, Field::R), s = diag({0.8, 0.3}, Field::R);
  const double v4 = trace_sq_variance(4.0, fp, r, s);
  const double v16 = trace_sq_variance(16.0, fp, r, s);
  const double v64 = trace_sq_variance(64.0, fp, r, s);
  CHECK(v16 < v4);
  CHECK(v64 < v16);
  CHECK(v64 < 0.1 * v4);
}

TEST_CASE("product formula and multiplicativity at small sample sizes") {
  CHECK(verify_product_formula(2.0, diag({1.0}, Field::R), diag({1.0}, Field::R), FieldParams(Field::R, 1), 200000, 9,
                               2e-2)
            .pass);
  const FieldParams c2(Field::C, 2);
  const VerificationReport pf =
      verify_product_formula(3.0, diag({1.0, 0.5}, Field::C), diag({0.8, 0.3}, Field::C), c2, 100000, 10, 5e-2);
  CHECK(pf.pass);
  CHECK(pf.extra["route"] == "haar-block");
  Mat sm(2, 2);
  sm << 1.0, cd(0.3, 0.2), cd(0.3, -0.2), 0.5;
  const VerificationReport mr = verify_multiplicativity(HermMatrix(sm, Field::C), diag({1.0, 0.5}, Field::C),
                                                        diag({0.8, 0.3}, Field::C), 3.5, c2, 100000, 11, 5e-2);
  CHECK(mr.pass);
  CHECK(mr.extra["route"] == "ball-density");
}
