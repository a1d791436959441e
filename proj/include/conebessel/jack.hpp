// SPDX-License-Identifier: Apache-2.0
//
// Jack polynomials C_lambda^alpha, zonal polynomials and generalized
// Pochhammer symbols.
//
// Evaluation runs the one-variable-at-a-time branching rule in the
// P-normalization,
//
//   P_lambda(x_1..x_m) = sum_mu psi_{lambda/mu} P_mu(x_1..x_{m-1}) x_m^{|lambda|-|mu|},
//
// over horizontal strips lambda/mu, and converts with
// C_lambda = alpha^k k! / c'_lambda * P_lambda, c'_lambda = prod_s (alpha(a(s)+1) + l(s)).
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "conebessel/field.hpp"
#include "conebessel/partition.hpp"

namespace conebessel {

/// Reusable scratch space for JackPlan evaluation; one per thread.
struct JackWorkspace {
  std::vector<std::vector<cd>> levels;  // P values per variable count
  std::vector<std::vector<cd>> powers;  // x_m^e
  int done_degree = -1;
};

/// Precomputed branching data for all partitions with at most nvars parts
/// and weight at most max_degree, for one alpha. Immutable once built.
class JackPlan {
 public:
  JackPlan(int nvars, double alpha, int max_degree);

  int nvars() const noexcept { return nvars_; }
  double alpha() const noexcept { return alpha_; }
  int max_degree() const noexcept { return max_degree_; }

  /// Top-level partitions, grouped by weight (reverse-lex inside a weight).
  const std::vector<Partition>& partitions() const noexcept { return top().parts; }
  std::size_t layer_begin(int k) const { return top().layer_start[static_cast<std::size_t>(k)]; }
  std::size_t layer_end(int k) const { return top().layer_start[static_cast<std::size_t>(k) + 1]; }
  /// Index of lambda among partitions(), or -1 if absent.
  std::ptrdiff_t index_of(const Partition& lambda) const;

  /// log(alpha^k k! / c'_lambda): converts P_lambda to C_lambda.
  double log_p_to_c(std::size_t idx) const { return log_p_to_c_[idx]; }
  /// P_lambda(1, ..., 1) in nvars variables.
  double p_at_ones(std::size_t idx) const { return p_ones_[idx]; }

  /// Resets the workspace for a new argument (length nvars).
  void begin(std::span<const cd> x, JackWorkspace& ws) const;
  /// Computes P_lambda(x) for every lambda of weight k; layers must be
  /// requested in increasing order starting at 0.
  void eval_layer(int k, JackWorkspace& ws) const;
  /// P values of the top level after eval_layer; indexed like partitions().
  static const std::vector<cd>& values(const JackWorkspace& ws) { return ws.levels.back(); }

  /// Evaluates every P_lambda up to degree k_max at x.
  std::vector<cd> evaluate_all(std::span<const cd> x, int k_max) const;

 private:
  struct Branch {
    std::uint32_t mu;
    std::uint32_t excess;
    double psi;
  };
  struct Level {
    std::vector<Partition> parts;
    std::vector<std::size_t> layer_start;  // size max_degree + 2
    std::vector<std::size_t> branch_start;
    std::vector<Branch> branches;
  };
  const Level& top() const { return levels_.back(); }

  int nvars_;
  double alpha_;
  int max_degree_;
  std::vector<Level> levels_;
  std::vector<double> log_p_to_c_;
  std::vector<double> p_ones_;
};

/// Shared plan cache keyed by (nvars, alpha). Returns a plan covering at
/// least min_degree. Concurrent callers may build duplicates; the first
/// stored plan wins.
std::shared_ptr<const JackPlan> jack_plan(int nvars, double alpha, int min_degree);

/// C_lambda^alpha(xi); zero when l(lambda) > len(xi).
cd jack_C(const Partition& lambda, double alpha, const Spectrum& xi);
/// Z_lambda(x) = C_lambda^{2/d}(eigenvalues of x).
cd zonal_Z(const Partition& lambda, const FieldParams& fp, const Spectrum& x);
/// (mu)_lambda^alpha = prod_j (mu - (j-1)/alpha)_{lambda_j}.
cd pochhammer_gen(cd mu, const Partition& lambda, double alpha);
/// C_lambda^alpha(1^q); zero when l(lambda) > q.
double jack_at_ones(const Partition& lambda, double alpha, int q);

/// c'_lambda = prod over boxes of (alpha (arm + 1) + leg).
double hook_product_upper(const Partition& lambda, double alpha);

}  // namespace conebessel
