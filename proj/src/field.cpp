// SPDX-License-Identifier: Apache-2.0
#include "conebessel/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "conebessel/errors.hpp"

namespace conebessel {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kJacobiTol = 1e-13;
constexpr double kPsdClamp = 1e-10;

double max_abs_entry(const Mat& m) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) s = std::max(s, std::abs(m(i, j)));
  return s;
}

void require_rank(int q) {
  if (q < 1) throw ValidationError("rank q must be >= 1");
}

// Applies A <- G^* A G and V <- V G for the plane rotation G acting on
// coordinates (p, r).
void rotate(Mat& a, Mat& v, Eigen::Index p, Eigen::Index r, cd g00, cd g01, cd g10, cd g11) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    const cd ap = a(i, p);
    const cd ar = a(i, r);
    a(i, p) = ap * g00 + ar * g10;
    a(i, r) = ap * g01 + ar * g11;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const cd ap = a(p, j);
    const cd ar = a(r, j);
    a(p, j) = std::conj(g00) * ap + std::conj(g10) * ar;
    a(r, j) = std::conj(g01) * ap + std::conj(g11) * ar;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const cd vp = v(i, p);
    const cd vr = v(i, r);
    v(i, p) = vp * g00 + vr * g10;
    v(i, r) = vp * g01 + vr * g11;
  }
}

cd det_small(const Mat& m) {
  switch (m.rows()) {
    case 0: return 1.0;
    case 1: return m(0, 0);
    case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default: return m.determinant();
  }
}

cd cpow_int(cd z, int e) {
  cd r = 1.0;
  while (e > 0) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

// Roots of z^3 + c2 z^2 + c1 z + c0 by Aberth iteration followed by Newton
// polishing.
CVec cubic_roots(cd c2, cd c1, cd c0) {
  auto poly = [&](cd z) { return ((z + c2) * z + c1) * z + c0; };
  auto dpoly = [&](cd z) { return (3.0 * z + 2.0 * c2) * z + c1; };
  const double radius = 1.0 + std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
  CVec z(3);
  for (int i = 0; i < 3; ++i)
    z[static_cast<std::size_t>(i)] = radius * std::polar(1.0, 0.4 + 2.0 * M_PI * i / 3.0);
  for (int it = 0; it < 500; ++it) {
    double change = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const cd p = poly(z[i]);
      const cd dp = dpoly(z[i]);
      if (p == 0.0) continue;
      const cd ratio = p / dp;
      cd s = 0.0;
      for (std::size_t j = 0; j < 3; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      const cd step = ratio / (1.0 - ratio * s);
      z[i] -= step;
      change = std::max(change, std::abs(step) / std::max(1.0, std::abs(z[i])));
    }
    if (change < 1e-16) break;
  }
  for (auto& zi : z) {
    for (int it = 0; it < 3; ++it) {
      const cd dp = dpoly(zi);
      if (dp == 0.0) break;
      const cd step = poly(zi) / dp;
      if (!std::isfinite(std::abs(step))) break;
      zi -= step;
    }
  }
  return z;
}

}  // namespace

Field parse_field(std::string_view name) {
  if (name == "R" || name == "r") return Field::R;
  if (name == "C" || name == "c") return Field::C;
  if (name == "H" || name == "h") return Field::H;
  throw ValidationError("unknown field '" + std::string(name) + "' (expected R, C or H)");
}

std::string to_string(Field f) {
  switch (f) {
    case Field::R: return "R";
    case Field::C: return "C";
    case Field::H: return "H";
  }
  return "?";
}

FieldParams::FieldParams(Field f, int rank) : field(f), q(rank) {
  require_rank(rank);
  d = f == Field::R ? 1 : (f == Field::C ? 2 : 4);
  alpha = 2.0 / d;
  n = q + d * q * (q - 1) / 2;
  gamma = d * (q - 0.5) + 1.0;
}

HermMatrix::HermMatrix(Mat entries, Field field) : m_(std::move(entries)), field_(field) {
  if (field == Field::H)
    throw ValidationError("quaternionic matrices are not supported; pass a spectrum instead");
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw ValidationError("Hermitian matrix must be square and non-empty");
  const double scale = std::max(1.0, max_abs_entry(m_));
  if (max_abs_entry(m_ - m_.adjoint()) > kHermTol * scale)
    throw ValidationError("matrix is not Hermitian to within 1e-12");
  if (field == Field::R && max_abs_entry(Mat(m_.imag().cast<cd>())) > kHermTol * scale)
    throw ValidationError("real symmetric matrix has non-zero imaginary parts");
  m_ = 0.5 * (m_ + m_.adjoint()).eval();
  if (field == Field::R) m_ = m_.real().cast<cd>();
}

HermMatrix HermMatrix::diagonal(std::span<const double> values, Field field) {
  Mat m = Mat::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
  return HermMatrix(std::move(m), field);
}

HermMatrix HermMatrix::identity(int q, Field field) {
  require_rank(q);
  return HermMatrix(Mat::Identity(q, q), field);
}

HermMatrix HermMatrix::zero(int q, Field field) {
  require_rank(q);
  return HermMatrix(Mat::Zero(q, q), field);
}

HermMatrix trusted_herm(Mat entries, Field field) {
  return HermMatrix(std::move(entries), field, HermMatrix::Trusted{});
}

ConePoint::ConePoint(const HermMatrix& x) : x_(x) {
  const EigenSystem es = hermitian_eigen(x.matrix());
  const double norm = std::max(std::abs(es.values.front()), std::abs(es.values.back()));
  const double lo = es.values.back();
  if (lo >= 0.0) return;
  if (lo < -kPsdClamp * norm)
    throw DomainError("matrix is not positive semidefinite (smallest eigenvalue " + std::to_string(lo) + ")");
  Eigen::VectorXd lam(static_cast<Eigen::Index>(es.values.size()));
  for (std::size_t i = 0; i < es.values.size(); ++i) lam(static_cast<Eigen::Index>(i)) = std::max(0.0, es.values[i]);
  Mat rebuilt = es.vectors * lam.cast<cd>().asDiagonal() * es.vectors.adjoint();
  rebuilt = 0.5 * (rebuilt + rebuilt.adjoint()).eval();
  if (x.field() == Field::R) rebuilt = rebuilt.real().cast<cd>();
  x_ = trusted_herm(std::move(rebuilt), x.field());
}

ConePoint ConePoint::diagonal(std::span<const double> values, Field field) {
  return ConePoint(HermMatrix::diagonal(values, field));
}

ConePoint ConePoint::identity(int q, Field field) { return ConePoint(HermMatrix::identity(q, field), 0); }

ConePoint ConePoint::zero(int q, Field field) { return ConePoint(HermMatrix::zero(q, field), 0); }

ConePoint ConePoint::trusted(Mat x, Field field) { return ConePoint(trusted_herm(std::move(x), field), 0); }

Spectrum Spectrum::from_real(std::span<const double> v) {
  Spectrum s;
  s.values.assign(v.begin(), v.end());
  return s;
}

double Spectrum::max_abs() const noexcept {
  double m = 0.0;
  for (const cd& v : values) m = std::max(m, std::abs(v));
  return m;
}

bool Spectrum::is_real() const noexcept {
  return std::all_of(values.begin(), values.end(), [](const cd& v) { return v.imag() == 0.0; });
}

Spectrum chamber_sorted(Spectrum s) {
  std::sort(s.values.begin(), s.values.end(), [](const cd& a, const cd& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  s.chamber_sorted = true;
  return s;
}

double RectMatrix::op_norm() const {
  if (entries.size() == 0) return 0.0;
  const Mat g = entries.adjoint() * entries;
  const EigenSystem es = hermitian_eigen(0.5 * (g + g.adjoint()));
  return std::sqrt(std::max(0.0, es.values.front()));
}

EigenSystem hermitian_eigen(const Mat& h) {
  const Eigen::Index n = h.rows();
  if (n != h.cols() || n < 1) throw ValidationError("eigensolver needs a non-empty square matrix");
  Mat a = h;
  Mat v = Mat::Identity(n, n);
  const double total = a.norm();
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) off += std::norm(a(i, j));
    if (std::sqrt(off) <= kJacobiTol * total) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index r = p + 1; r < n; ++r) {
        const cd apr = a(p, r);
        const double mag = std::abs(apr);
        if (mag == 0.0) continue;
        const cd phase = apr / mag;
        const double app = a(p, p).real();
        const double arr = a(r, r).real();
        const double tau = (arr - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const cd ph = std::conj(phase);
        rotate(a, v, p, r, c, s, -s * ph, c * ph);
        a(p, r) = 0.0;
        a(r, p) = 0.0;
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() > a(y, y).real(); });
  EigenSystem es;
  es.values.resize(static_cast<std::size_t>(n));
  es.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    es.values[static_cast<std::size_t>(k)] = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
    es.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return es;
}

Spectrum eigvals_ordered(const HermMatrix& x) {
  const EigenSystem es = hermitian_eigen(x.matrix());
  Spectrum s = Spectrum::from_real(es.values);
  s.chamber_sorted = true;
  return s;
}

EigenSystem eigen_decompose(const HermMatrix& x) { return hermitian_eigen(x.matrix()); }

Mat psd_sqrt_unchecked(const Mat& x) {
  const Eigen::Index n = x.rows();
  if (n == 1) return Mat::Constant(1, 1, std::sqrt(std::max(0.0, x(0, 0).real())));
  const EigenSystem es = hermitian_eigen(x);
  Eigen::VectorXcd root(n);
  for (Eigen::Index i = 0; i < n; ++i) root(i) = std::sqrt(std::max(0.0, es.values[static_cast<std::size_t>(i)]));
  Mat y = es.vectors * root.asDiagonal() * es.vectors.adjoint();
  return 0.5 * (y + y.adjoint());
}

ConePoint psd_sqrt(const ConePoint& x) {
  Mat y = psd_sqrt_unchecked(x.matrix());
  if (x.field() == Field::R) y = y.real().cast<cd>();
  return ConePoint::trusted(std::move(y), x.field());
}

cd principal_minor(const Mat& x, int i) {
  if (i < 1 || i > x.rows()) throw ValidationError("principal minor index out of range");
  return det_small(x.topLeftCorner(i, i));
}

cd power_function(const HermMatrix& x, const Partition& lambda) {
  const int q = x.rank();
  if (lambda.length() > q)
    throw ValidationError("power function needs l(lambda) <= q, got " + lambda.to_string());
  cd r = 1.0;
  for (int i = 1; i <= lambda.length(); ++i) {
    const int e = lambda[i - 1] - lambda[i];
    if (e > 0) r *= cpow_int(principal_minor(x.matrix(), i), e);
  }
  return r;
}

CVec complex_eigenvalues(const Mat& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols() || n < 1) throw ValidationError("eigenvalues need a non-empty square matrix");
  if (n == 1) return {m(0, 0)};
  if (n == 2) {
    const cd tr = m(0, 0) + m(1, 1);
    const cd det = det_small(m);
    const cd disc = std::sqrt(tr * tr - 4.0 * det);
    const cd big = std::abs(tr + disc) >= std::abs(tr - disc) ? 0.5 * (tr + disc) : 0.5 * (tr - disc);
    if (big == 0.0) return {0.0, 0.0};
    return {big, det / big};
  }
  if (n == 3) {
    const cd tr = m.trace();
    const cd minors = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) + (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) +
                      (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1));
    return cubic_roots(-tr, minors, -det_small(m));
  }
  Eigen::ComplexEigenSolver<Mat> solver(m, false);
  const auto& ev = solver.eigenvalues();
  return CVec(ev.data(), ev.data() + ev.size());
}

std::vector<double> psd_product_spectrum(const Mat& a_psd, const Mat& b_herm) {
  const Mat ra = psd_sqrt_unchecked(a_psd);
  Mat c = ra * b_herm * ra;
  c = 0.5 * (c + c.adjoint()).eval();
  return hermitian_eigen(c).values;
}

}  // namespace conebessel
