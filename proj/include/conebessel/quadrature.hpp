// SPDX-License-Identifier: Apache-2.0
//
// Deterministic quadrature over Pi_q and Pi_q^I = {0 <= y <= I} for q <= 2.
//
// q = 1: tanh-sinh on [0, 1] or [0, R].
// q = 2: x = c I + r (n . sigma) with eigenvalues a = c + r >= b = c - r and
// n on the unit sphere S^d of the traceless part; Lebesgue measure of the
// trace form is
//
//   dx = 2^(d/2) ((a - b)/2)^d da db dn.
//
// Radial nodes are tanh-sinh in (a, t = b/a); the sphere uses the
// trapezoid rule (d = 1) or Gauss-Legendre in cos(theta) times the
// trapezoid rule in phi (d = 2). Level L halves the tanh-sinh step and
// doubles the angular count of level L - 1; the error estimate is the
// difference between the two.
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "conebessel/field.hpp"

namespace conebessel {

enum class ConeDomain { Cone, Unit };

struct ConeNode {
  /// Eigenvalues a >= b (b unused for q = 1).
  std::array<double, 2> eig{};
  /// 1 - a, 1 - b computed without cancellation (Unit domain).
  std::array<double, 2> comp{};
  /// Unit vector of the traceless part (q = 2).
  std::array<double, 3> dir{};
  double weight = 0.0;
};

class ConeQuadrature {
 public:
  /// radius is the truncation radius of Pi_q (ignored for the Unit domain).
  ConeQuadrature(const FieldParams& fp, ConeDomain domain, int level, double radius = 0.0);

  const FieldParams& params() const noexcept { return fp_; }
  ConeDomain domain() const noexcept { return domain_; }
  int level() const noexcept { return level_; }
  double radius() const noexcept { return radius_; }
  const std::vector<ConeNode>& nodes() const noexcept { return nodes_; }

  /// The Hermitian matrix at a node.
  Mat matrix(const ConeNode& node) const;
  /// Delta(x) and Delta(I - x) at a node.
  double det(const ConeNode& node) const;
  double det_complement(const ConeNode& node) const;

 private:
  FieldParams fp_;
  ConeDomain domain_;
  int level_;
  double radius_;
  std::vector<ConeNode> nodes_;
};

struct QuadSpec {
  ConeDomain domain = ConeDomain::Unit;
  /// Finest level; 0 selects 6 for q = 1 and 3 for q = 2.
  int level = 0;
  /// Truncation radius for Pi_q; 0 lets the caller choose.
  double radius = 0.0;
  /// Relative tolerance above which the error estimate is flagged.
  double tol = 1e-8;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t nodes = 0;
  bool flagged = false;
};

using ConeIntegrand = std::function<double(const Mat& x, const ConeNode& node, const ConeQuadrature& quad)>;

int default_level(int q);

/// Integrates f at spec.level and spec.level - 1; value from the finer
/// rule, error = |difference|, flagged when error > tol * |value|.
QuadResult cone_integrate(const ConeIntegrand& f, const FieldParams& fp, const QuadSpec& spec);

/// Radius where exp(-lambda_min(y) R) = 1e-16.
double laplace_radius(const Mat& y);

}  // namespace conebessel
