// SPDX-License-Identifier: Apache-2.0
#include "conebessel/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conebessel/errors.hpp"

namespace conebessel {

namespace {

constexpr double kPoleTol = 1e-14;

// Sorts a copy of x into canonical chamber order and returns its scale.
double canonical(std::span<const cd> x, std::vector<cd>& out) {
  out.assign(x.begin(), x.end());
  std::sort(out.begin(), out.end(), [](const cd& a, const cd& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  double s = 0.0;
  for (const cd& v : out) s = std::max(s, std::abs(v));
  if (s > 0.0)
    for (cd& v : out) v /= s;
  return s;
}

}  // namespace

void SeriesControl::validate() const {
  if (k_max < 1) throw ValidationError("series k_max must be >= 1");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw ValidationError("series rel_tol must lie in (0, 1)");
  if (quiet_layers < 1) throw ValidationError("series quiet_layers must be >= 1");
  if (!(max_arg > 0.0)) throw ValidationError("series max_arg must be positive");
}

std::string to_string(Advice a) {
  switch (a) {
    case Advice::None: return "none";
    case Advice::LargeArgument: return "AdviceLargeArgument";
    case Advice::NotConverged: return "NotConverged";
  }
  return "?";
}

JackSeries::JackSeries(int nargs, int nvars, double alpha, std::optional<cd> mu, double sign, SeriesControl ctrl)
    : nargs_(nargs), nvars_(nvars), mu_(mu), ctrl_(ctrl) {
  ctrl_.validate();
  if (nargs != 1 && nargs != 2) throw ValidationError("series takes one or two arguments");
  guard_scale_ = mu ? std::max(1.0, std::abs(*mu)) : 1.0;
  plan_ = jack_plan(nvars, alpha, ctrl_.k_max);
  const auto& parts = plan_->partitions();
  const std::size_t total = plan_->layer_end(ctrl_.k_max);
  rel_coef_.assign(total, 0.0);
  layer_ref_.assign(static_cast<std::size_t>(ctrl_.k_max) + 1, 0.0);
  pole_.assign(static_cast<std::size_t>(ctrl_.k_max) + 1, -1);
  std::vector<double> logmag(total, 0.0);
  std::vector<cd> phase(total, 1.0);
  for (int k = 0; k <= ctrl_.k_max; ++k) {
    double ref = -std::numeric_limits<double>::infinity();
    for (std::size_t i = plan_->layer_begin(k); i < plan_->layer_end(k); ++i) {
      const Partition& lam = parts[i];
      double lm = plan_->log_p_to_c(i) - std::lgamma(k + 1.0);
      cd ph = (sign < 0.0 && (k % 2)) ? -1.0 : 1.0;
      if (nargs == 2) lm -= std::log(plan_->p_at_ones(i));
      bool pole = false;
      if (mu) {
        const double tol = kPoleTol * (1.0 + std::abs(*mu));
        for (int j = 0; j < lam.length() && !pole; ++j) {
          const cd base = *mu - static_cast<double>(j) / alpha;
          for (int t = 0; t < lam[j]; ++t) {
            const cd f = base + static_cast<double>(t);
            const double af = std::abs(f);
            if (af < tol) {
              pole = true;
              break;
            }
            lm -= std::log(af);
            ph *= std::conj(f) / af;
          }
        }
      }
      if (pole) {
        if (pole_[static_cast<std::size_t>(k)] < 0) pole_[static_cast<std::size_t>(k)] = static_cast<std::ptrdiff_t>(i);
        logmag[i] = -std::numeric_limits<double>::infinity();
        continue;
      }
      logmag[i] = lm;
      phase[i] = ph;
      ref = std::max(ref, lm);
    }
    if (!std::isfinite(ref)) ref = 0.0;
    layer_ref_[static_cast<std::size_t>(k)] = ref;
    for (std::size_t i = plan_->layer_begin(k); i < plan_->layer_end(k); ++i)
      rel_coef_[i] = std::isfinite(logmag[i]) ? phase[i] * std::exp(logmag[i] - ref) : cd(0.0);
  }
}

SeriesValue JackSeries::evaluate(std::span<const cd> x, std::span<const cd> y) const {
  if (static_cast<int>(x.size()) != nvars_ || (nargs_ == 2 && static_cast<int>(y.size()) != nvars_))
    throw ValidationError("series argument length mismatch");
  thread_local std::vector<cd> xs, ys;
  thread_local JackWorkspace wx, wy;
  const double sx = canonical(x, xs);
  const double sy = nargs_ == 2 ? canonical(y, ys) : 1.0;
  SeriesValue out;
  const double size = sx * sy;
  if (!std::isfinite(size) || size > ctrl_.max_arg * guard_scale_) {
    out.value = cd(std::numeric_limits<double>::quiet_NaN(), 0.0);
    out.converged = false;
    out.advice = Advice::LargeArgument;
    out.est_tail = std::numeric_limits<double>::infinity();
    return out;
  }
  if (size == 0.0) return out;
  const double log_scale = std::log(size);
  plan_->begin(xs, wx);
  if (nargs_ == 2) plan_->begin(ys, wy);
  cd sum = 0.0;
  cd comp = 0.0;
  int quiet = 0;
  out.converged = false;
  for (int k = 0; k <= ctrl_.k_max; ++k) {
    plan_->eval_layer(k, wx);
    if (nargs_ == 2) plan_->eval_layer(k, wy);
    if (const auto p = pole_[static_cast<std::size_t>(k)]; p >= 0)
      throw IndexPole(plan_->partitions()[static_cast<std::size_t>(p)].to_string(),
                      "generalized Pochhammer symbol vanishes");
    const auto& px = JackPlan::values(wx);
    cd acc = 0.0;
    if (nargs_ == 1) {
      for (std::size_t i = plan_->layer_begin(k); i < plan_->layer_end(k); ++i) acc += rel_coef_[i] * px[i];
    } else {
      const auto& py = JackPlan::values(wy);
      for (std::size_t i = plan_->layer_begin(k); i < plan_->layer_end(k); ++i)
        acc += rel_coef_[i] * px[i] * py[i];
    }
    const cd layer = acc * std::exp(layer_ref_[static_cast<std::size_t>(k)] + k * log_scale);
    // Kahan summation across layers
    const cd yk = layer - comp;
    const cd t = sum + yk;
    comp = (t - sum) - yk;
    sum = t;
    out.truncation_degree = k;
    out.est_tail = std::abs(layer);
    if (k == 0) continue;
    if (out.est_tail <= ctrl_.rel_tol * std::abs(sum)) {
      if (++quiet >= ctrl_.quiet_layers) {
        out.converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
  }
  out.value = sum;
  if (!out.converged) out.advice = Advice::NotConverged;
  return out;
}

BesselSeries::BesselSeries(cd mu, int q, double alpha, SeriesControl ctrl)
    : s_(1, q, alpha, mu, -1.0, ctrl) {}

SeriesValue BesselSeries::at_matrix(const Mat& herm) const {
  const EigenSystem es = hermitian_eigen(herm);
  thread_local CVec v;
  v.assign(es.values.begin(), es.values.end());
  return s_.evaluate(v);
}

}  // namespace conebessel
