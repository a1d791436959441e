// SPDX-License-Identifier: Apache-2.0
//
// Layered evaluation of Jack-polynomial hypergeometric series
//
//   sum_k sum_{|lambda|=k} c_lambda * prod_args C_lambda(arg)
//
// with early stopping by total degree. Each layer is evaluated at
// arguments rescaled to unit size and multiplied back in the log domain, so
// high-degree layers neither overflow nor underflow.
#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>

#include "conebessel/field.hpp"
#include "conebessel/jack.hpp"

namespace conebessel {

struct SeriesControl {
  int k_max = 30;
  double rel_tol = 1e-12;
  int quiet_layers = 2;
  /// Refuse arguments with max|xi| > max_arg * max(1, |mu|).
  double max_arg = 25.0;

  void validate() const;
};

enum class Advice { None, LargeArgument, NotConverged };
std::string to_string(Advice a);

struct SeriesValue {
  cd value = 1.0;
  int truncation_degree = 0;
  double est_tail = 0.0;
  bool converged = true;
  Advice advice = Advice::None;
};
using BesselValue = SeriesValue;

/// Prepared series in nargs in {1, 2} arguments of length nvars:
///   nargs = 1:  sum sign^k C_lambda(x) / ((mu)_lambda k!)
///   nargs = 2:  sum sign^k C_lambda(x) C_lambda(y) / ((mu)_lambda k! C_lambda(1))
/// Without mu the Pochhammer factor is dropped (0F0). Immutable after
/// construction; evaluate() is thread-safe.
class JackSeries {
 public:
  JackSeries(int nargs, int nvars, double alpha, std::optional<cd> mu, double sign, SeriesControl ctrl);

  SeriesValue evaluate(std::span<const cd> x, std::span<const cd> y = {}) const;
  const SeriesControl& control() const noexcept { return ctrl_; }
  int nvars() const noexcept { return nvars_; }

 private:
  int nargs_;
  int nvars_;
  std::optional<cd> mu_;
  double guard_scale_;
  SeriesControl ctrl_;
  std::shared_ptr<const JackPlan> plan_;
  std::vector<double> layer_ref_;  // log of the largest |coefficient| in the layer
  std::vector<cd> rel_coef_;       // coefficient / exp(layer_ref)
  std::vector<std::ptrdiff_t> pole_;  // first pole partition index per layer, -1 if none
};

/// Cheap handle for J_mu on a fixed (mu, q, alpha).
class BesselSeries {
 public:
  BesselSeries(cd mu, int q, double alpha, SeriesControl ctrl = {});
  SeriesValue operator()(std::span<const cd> spectrum) const { return s_.evaluate(spectrum); }
  SeriesValue operator()(const Spectrum& x) const { return s_.evaluate(x.values); }
  /// J_mu at the real eigenvalues of a Hermitian matrix.
  SeriesValue at_matrix(const Mat& herm) const;

 private:
  JackSeries s_;
};

}  // namespace conebessel
