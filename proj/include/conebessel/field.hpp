// SPDX-License-Identifier: Apache-2.0
//
// Base fields, Hermitian matrices over R and C, the cone of positive
// semidefinite matrices and the small dense linear algebra the rest of the
// library runs on. Quaternionic data never appears in matrix form; it is
// carried by spectra only.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conebessel/partition.hpp"

namespace conebessel {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = std::vector<cd>;

/// Hermitian routines (Jacobi, chamber maps) are meant for q <= kMaxRank.
inline constexpr int kMaxRank = 8;

enum class Field { R, C, H };

Field parse_field(std::string_view name);
std::string to_string(Field f);

/// Constants attached to (F, q): d = dim_R F, alpha = 2/d,
/// n = dim_R H_q(F) and gamma = d(q - 1/2) + 1.
struct FieldParams {
  FieldParams(Field field, int q);

  Field field;
  int d;
  double alpha;
  int q;
  int n;
  double gamma;

  double n_over_q() const noexcept { return static_cast<double>(n) / q; }
  /// Lower bound d(q-1)/2 for Gamma/beta parameters on the cone.
  double gamma_bound() const noexcept { return 0.5 * d * (q - 1); }
  /// Lower bound d(q - 1/2) for the ball product formula.
  double ball_bound() const noexcept { return d * (q - 0.5); }
};

/// Hermitian q x q matrix over R or C, symmetrized on construction.
class HermMatrix {
 public:
  HermMatrix(Mat entries, Field field);

  static HermMatrix diagonal(std::span<const double> values, Field field);
  static HermMatrix identity(int q, Field field);
  static HermMatrix zero(int q, Field field);

  const Mat& matrix() const noexcept { return m_; }
  int rank() const noexcept { return static_cast<int>(m_.rows()); }
  Field field() const noexcept { return field_; }

 private:
  struct Trusted {};
  HermMatrix(Mat entries, Field field, Trusted) : m_(std::move(entries)), field_(field) {}
  friend class ConePoint;
  friend HermMatrix trusted_herm(Mat entries, Field field);

  Mat m_;
  Field field_;
};

/// Wraps an already-Hermitian matrix without re-validating it. For internal
/// hot loops whose construction guarantees the invariant.
HermMatrix trusted_herm(Mat entries, Field field);

/// Positive semidefinite Hermitian matrix. Eigenvalues down to
/// -1e-10 * spectral norm are clamped to zero; anything more negative is a
/// DomainError.
class ConePoint {
 public:
  explicit ConePoint(const HermMatrix& x);

  static ConePoint diagonal(std::span<const double> values, Field field);
  static ConePoint identity(int q, Field field);
  static ConePoint zero(int q, Field field);
  /// Skips the spectral check; the caller guarantees x >= 0.
  static ConePoint trusted(Mat x, Field field);

  const HermMatrix& herm() const noexcept { return x_; }
  const Mat& matrix() const noexcept { return x_.matrix(); }
  int rank() const noexcept { return x_.rank(); }
  Field field() const noexcept { return x_.field(); }

 private:
  explicit ConePoint(HermMatrix x, int) : x_(std::move(x)) {}
  HermMatrix x_;
};

/// Ordered or raw eigenvalue vector; the only representation available for
/// quaternionic arguments.
struct Spectrum {
  CVec values;
  bool chamber_sorted = false;

  static Spectrum from_real(std::span<const double> v);
  std::size_t size() const noexcept { return values.size(); }
  double max_abs() const noexcept;
  /// True when every entry has zero imaginary part.
  bool is_real() const noexcept;
};

/// Sort descending by real part (ties by imaginary part); marks the result
/// chamber-sorted. Canonical order for series evaluation.
Spectrum chamber_sorted(Spectrum s);

/// p x q matrix over R or C; elements of M_{p,q} and of the ball B_q.
struct RectMatrix {
  Mat entries;
  Field field = Field::R;

  double op_norm() const;
  /// Largest singular value strictly below one.
  bool in_ball() const { return op_norm() < 1.0; }
};

/// Eigenvalues in descending order with unitary eigenvectors as columns.
struct EigenSystem {
  std::vector<double> values;
  Mat vectors;
};

/// Cyclic Jacobi eigensolver for a Hermitian matrix (input not re-checked).
EigenSystem hermitian_eigen(const Mat& h);

/// Descending real spectrum of x.
Spectrum eigvals_ordered(const HermMatrix& x);
EigenSystem eigen_decompose(const HermMatrix& x);

/// Unique PSD square root.
ConePoint psd_sqrt(const ConePoint& x);
/// Square root of a Hermitian matrix known to be PSD up to round-off
/// (negative eigenvalues clamped), for hot loops.
Mat psd_sqrt_unchecked(const Mat& x);

/// Determinant of the leading i x i block (i >= 1).
cd principal_minor(const Mat& x, int i);
/// Delta_lambda(x) = prod_i Delta_i(x)^(lambda_i - lambda_{i+1}).
cd power_function(const HermMatrix& x, const Partition& lambda);

/// Eigenvalues of a general complex square matrix. Ranks up to three use
/// characteristic-polynomial roots; larger ranks fall back to a QR solver.
CVec complex_eigenvalues(const Mat& m);

/// Eigenvalues of a*b for PSD a and Hermitian b, via sqrt(a) b sqrt(a).
std::vector<double> psd_product_spectrum(const Mat& a_psd, const Mat& b_herm);

/// Monte Carlo estimate with its standard error.
struct McEstimate {
  cd value;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Haar average of Delta_lambda(u x u^*) over U_q(F), F in {R, C}.
/// Only used as a cross-check oracle for zonal polynomials; N >= 100.
McEstimate spherical_poly_mc(const Partition& lambda, const HermMatrix& x, const FieldParams& fp,
                             std::size_t samples, std::uint64_t seed);

}  // namespace conebessel
