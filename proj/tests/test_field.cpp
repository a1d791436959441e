// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include "conebessel/errors.hpp"
#include "conebessel/field.hpp"
#include "conebessel/jack.hpp"
#include "conebessel/measures.hpp"
#include "conebessel/partition.hpp"
#include "conebessel/rng.hpp"
#include "doctest.h"

using namespace conebessel;

namespace {

Mat random_herm(int q, Field f, RngStream& rng) {
  Mat g;
  gaussian_matrix(q, q, f, rng, g);
  return (g + g.adjoint()) / 2.0;
}

Mat random_psd(int q, Field f, RngStream& rng) {
  Mat g;
  gaussian_matrix(q + 1, q, f, rng, g);
  return g.adjoint() * g;
}

}  // namespace

TEST_CASE("field constants") {
  const FieldParams r(Field::R, 3);
  CHECK(r.d == 1);
  CHECK(r.alpha == 2.0);
  CHECK(r.n == 6);
  CHECK(r.gamma == doctest::Approx(3.5));
  const FieldParams c(Field::C, 2);
  CHECK(c.d == 2);
  CHECK(c.alpha == 1.0);
  CHECK(c.n == 4);
  CHECK(c.gamma == doctest::Approx(4.0));
  CHECK(c.gamma_bound() == doctest::Approx(1.0));
  CHECK(c.ball_bound() == doctest::Approx(3.0));
  const FieldParams h(Field::H, 2);
  CHECK(h.d == 4);
  CHECK(h.alpha == 0.5);
  CHECK(h.n == 6);
  CHECK(parse_field("C") == Field::C);
  CHECK(to_string(Field::H) == "H");
  CHECK_THROWS_AS(parse_field("O"), ValidationError);
}

TEST_CASE("partitions") {
  CHECK(partitions_of(4, 4).size() == 5);
  CHECK(partitions_of(4, 2).size() == 3);
  CHECK(partitions_up_to(3, 2).size() == 6);
  const Partition p{3, 1, 0};
  CHECK(p.length() == 2);
  CHECK(p.weight() == 4);
  CHECK(p.conjugate() == Partition{2, 1, 1});
  CHECK(p[5] == 0);
}

TEST_CASE("hermitian validation") {
  Mat m(2, 2);
  m << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(HermMatrix(m, Field::R), ValidationError);
  Mat c(2, 2);
  c << 1.0, cd(0, 1), cd(0, -1), 1.0;
  CHECK_THROWS_AS(HermMatrix(c, Field::R), ValidationError);
  CHECK_NOTHROW(HermMatrix(c, Field::C));
  Mat neg(2, 2);
  neg << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(ConePoint(HermMatrix(neg, Field::R)), DomainError);
}

TEST_CASE("eigen decomposition round trip") {
  RngStream rng(7, 0);
  for (Field f : {Field::R, Field::C}) {
    for (int q = 1; q <= 5; ++q) {
      const Mat h = random_herm(q, f, rng);
      const EigenSystem es = eigen_decompose(HermMatrix(h, f));
      Mat diag = Mat::Zero(q, q);
      for (int i = 0; i < q; ++i) diag(i, i) = es.values[static_cast<std::size_t>(i)];
      CHECK((es.vectors * diag * es.vectors.adjoint() - h).norm() < 1e-12);
      CHECK((es.vectors.adjoint() * es.vectors - Mat::Identity(q, q)).norm() < 1e-12);
      for (int i = 1; i < q; ++i) CHECK(es.values[static_cast<std::size_t>(i - 1)] >= es.values[static_cast<std::size_t>(i)]);
      Eigen::SelfAdjointEigenSolver<Mat> ref(h);
      for (int i = 0; i < q; ++i)
        CHECK(es.values[static_cast<std::size_t>(i)] == doctest::Approx(ref.eigenvalues()(q - 1 - i)).epsilon(1e-12));
    }
  }
}

TEST_CASE("psd square root against SVD") {
  RngStream rng(8, 0);
  for (Field f : {Field::R, Field::C}) {
    for (int q = 1; q <= 4; ++q) {
      const Mat x = random_psd(q, f, rng);
      const ConePoint root = psd_sqrt(ConePoint(HermMatrix(x, f)));
      Eigen::JacobiSVD<Mat> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Mat ref = svd.matrixU() * svd.singularValues().cwiseSqrt().asDiagonal() * svd.matrixU().adjoint();
      CHECK((root.matrix() - ref).norm() < 1e-10 * (1.0 + ref.norm()));
      CHECK((root.matrix() * root.matrix() - x).norm() < 1e-10 * (1.0 + x.norm()));
    }
  }
}

TEST_CASE("power function") {
  const std::vector<double> v{2.0, 3.0, 5.0};
  const HermMatrix x = HermMatrix::diagonal(v, Field::R);
  CHECK(std::abs(power_function(x, Partition{2, 1, 1}) - cd(4.0 * 3.0 * 5.0)) < 1e-12);
  CHECK(std::abs(power_function(x, Partition{}) - cd(1.0)) < 1e-15);
  Mat m(2, 2);
  m << 2.0, cd(1, 1), cd(1, -1), 3.0;
  const HermMatrix h(m, Field::C);
  // Delta_(2,1)(x) = Delta_1 Delta_2 = 2 * (6 - 2)
  CHECK(std::abs(power_function(h, Partition{2, 1}) - cd(8.0)) < 1e-12);
  CHECK(std::abs(principal_minor(m, 2) - cd(4.0)) < 1e-12);
}

TEST_CASE("complex eigenvalues against Eigen") {
  RngStream rng(9, 0);
  for (int q = 1; q <= 5; ++q) {
    Mat a;
    gaussian_matrix(q, q, Field::C, rng, a);
    CVec ev = complex_eigenvalues(a);
    Eigen::ComplexEigenSolver<Mat> ref(a);
    std::vector<bool> used(static_cast<std::size_t>(q), false);
    for (const cd& z : ev) {
      double best = 1e300;
      int bi = -1;
      for (int i = 0; i < q; ++i)
        if (!used[static_cast<std::size_t>(i)] && std::abs(ref.eigenvalues()(i) - z) < best) {
          best = std::abs(ref.eigenvalues()(i) - z);
          bi = i;
        }
      REQUIRE(bi >= 0);
      used[static_cast<std::size_t>(bi)] = true;
      CHECK(best < 1e-9);
    }
  }
}

TEST_CASE("psd product spectrum") {
  RngStream rng(10, 0);
  const Mat a = random_psd(3, Field::C, rng);
  const Mat b = random_herm(3, Field::C, rng);
  std::vector<double> s = psd_product_spectrum(a, b);
  Eigen::ComplexEigenSolver<Mat> ref(a * b);
  std::vector<double> r;
  for (int i = 0; i < 3; ++i) r.push_back(ref.eigenvalues()(i).real());
  std::sort(s.begin(), s.end());
  std::sort(r.begin(), r.end());
  for (int i = 0; i < 3; ++i) CHECK(s[static_cast<std::size_t>(i)] == doctest::Approx(r[static_cast<std::size_t>(i)]).epsilon(1e-10));
}

TEST_CASE("Haar average of the power function gives the spherical polynomial") {
  const std::vector<double> v{1.3, 0.6};
  for (Field f : {Field::R, Field::C}) {
    const FieldParams fp(f, 2);
    const HermMatrix x = HermMatrix::diagonal(v, f);
    const Spectrum sx = Spectrum::from_real(v);
    const std::vector<double> ones{1.0, 1.0};
    for (const Partition& lam : {Partition{2}, Partition{2, 1}, Partition{3, 1}}) {
      const McEstimate est = spherical_poly_mc(lam, x, fp, 40000, 3);
      const cd ref = zonal_Z(lam, fp, sx) / zonal_Z(lam, fp, Spectrum::from_real(ones));
      CHECK(std::abs(est.value - ref) < 5.0 * est.std_error + 1e-12);
    }
  }
}

TEST_CASE("rng streams are reproducible and independent") {
  RngStream a(5, 1), b(5, 1), c(5, 2);
  for (int i = 0; i < 10; ++i) {
    const std::uint64_t x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  RngStream u(11, 0);
  double s = 0.0, s2 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double z = u.normal();
    s += z;
    s2 += z * z;
  }
  CHECK(std::abs(s / n) < 0.02);
  CHECK(std::abs(s2 / n - 1.0) < 0.03);
  double g = 0.0;
  for (int i = 0; i < n; ++i) g += u.gamma(0.7);
  CHECK(std::abs(g / n - 0.7) < 0.02);
}
