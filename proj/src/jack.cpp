// SPDX-License-Identifier: Apache-2.0
#include "conebessel/jack.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>

#include "conebessel/errors.hpp"

namespace conebessel {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("Jack parameter alpha must be positive");
}

// b_nu(s) for the box (i, j) (1-based) of nu, given nu and its conjugate.
double hook_ratio(const Partition& nu, const Partition& nu_conj, int i, int j, double alpha) {
  const double arm = nu[i - 1] - j;
  const double leg = nu_conj[j - 1] - i;
  return (alpha * arm + leg + 1.0) / (alpha * arm + leg + alpha);
}

double branching_psi(const Partition& lambda, const Partition& mu, double alpha) {
  const Partition lc = lambda.conjugate();
  const Partition mc = mu.conjugate();
  std::vector<char> strip_col(static_cast<std::size_t>(lambda[0]) + 1, 0);
  for (int r = 0; r < lambda.length(); ++r)
    for (int j = mu[r] + 1; j <= lambda[r]; ++j) strip_col[static_cast<std::size_t>(j)] = 1;
  double psi = 1.0;
  for (int r = 0; r < lambda.length(); ++r) {
    if (lambda[r] == mu[r]) continue;
    for (int j = 1; j <= mu[r]; ++j) {
      if (strip_col[static_cast<std::size_t>(j)]) continue;
      psi *= hook_ratio(mu, mc, r + 1, j, alpha) / hook_ratio(lambda, lc, r + 1, j, alpha);
    }
  }
  return psi;
}

// All mu with lambda_{i+1} <= mu_i <= lambda_i for i < m-1, mu_{m} = 0.
void interlacing(const Partition& lambda, int m, std::vector<Partition>& out) {
  out.clear();
  std::vector<int> cur(static_cast<std::size_t>(std::max(0, m - 1)), 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == m - 1) {
      out.emplace_back(cur);
      return;
    }
    for (int v = lambda[i + 1]; v <= lambda[i]; ++v) {
      cur[static_cast<std::size_t>(i)] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
}

}  // namespace

double hook_product_upper(const Partition& lambda, double alpha) {
  const Partition lc = lambda.conjugate();
  double p = 1.0;
  for (int i = 1; i <= lambda.length(); ++i)
    for (int j = 1; j <= lambda[i - 1]; ++j)
      p *= alpha * (lambda[i - 1] - j + 1) + (lc[j - 1] - i);
  return p;
}

JackPlan::JackPlan(int nvars, double alpha, int max_degree)
    : nvars_(nvars), alpha_(alpha), max_degree_(max_degree) {
  require_alpha(alpha);
  if (nvars < 1) throw ValidationError("Jack plan needs at least one variable");
  if (max_degree < 0) throw ValidationError("Jack plan degree must be >= 0");
  levels_.resize(static_cast<std::size_t>(nvars) + 1);
  {
    Level& l0 = levels_[0];
    l0.parts = {Partition{}};
    l0.layer_start.assign(static_cast<std::size_t>(max_degree) + 2, 1);
    l0.layer_start[0] = 0;
    l0.branch_start = {0, 0};
  }
  std::vector<Partition> mus;
  for (int m = 1; m <= nvars; ++m) {
    Level& lv = levels_[static_cast<std::size_t>(m)];
    const Level& prev = levels_[static_cast<std::size_t>(m - 1)];
    std::map<Partition, std::uint32_t> prev_index;
    for (std::size_t i = 0; i < prev.parts.size(); ++i) prev_index.emplace(prev.parts[i], static_cast<std::uint32_t>(i));
    lv.parts = partitions_up_to(max_degree, m);
    lv.layer_start.assign(static_cast<std::size_t>(max_degree) + 2, 0);
    for (const Partition& p : lv.parts) ++lv.layer_start[static_cast<std::size_t>(p.weight()) + 1];
    for (std::size_t k = 1; k < lv.layer_start.size(); ++k) lv.layer_start[k] += lv.layer_start[k - 1];
    lv.branch_start.reserve(lv.parts.size() + 1);
    lv.branch_start.push_back(0);
    for (const Partition& lambda : lv.parts) {
      interlacing(lambda, m, mus);
      for (const Partition& mu : mus) {
        const auto it = prev_index.find(mu);
        if (it == prev_index.end()) throw std::logic_error("Jack plan: missing sub-partition " + mu.to_string());
        lv.branches.push_back({it->second, static_cast<std::uint32_t>(lambda.weight() - mu.weight()),
                               branching_psi(lambda, mu, alpha)});
      }
      lv.branch_start.push_back(lv.branches.size());
    }
  }
  const auto& parts = top().parts;
  log_p_to_c_.resize(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const int k = parts[i].weight();
    log_p_to_c_[i] = k * std::log(alpha) + std::lgamma(k + 1.0) - std::log(hook_product_upper(parts[i], alpha));
  }
  const std::vector<cd> ones(static_cast<std::size_t>(nvars), cd(1.0));
  const std::vector<cd> at_ones = evaluate_all(ones, max_degree);
  p_ones_.resize(at_ones.size());
  for (std::size_t i = 0; i < at_ones.size(); ++i) p_ones_[i] = at_ones[i].real();
}

std::ptrdiff_t JackPlan::index_of(const Partition& lambda) const {
  if (lambda.weight() > max_degree_ || lambda.length() > nvars_) return -1;
  const auto& parts = top().parts;
  const int k = lambda.weight();
  for (std::size_t i = layer_begin(k); i < layer_end(k); ++i)
    if (parts[i] == lambda) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

void JackPlan::begin(std::span<const cd> x, JackWorkspace& ws) const {
  if (static_cast<int>(x.size()) != nvars_) throw ValidationError("Jack plan: argument length mismatch");
  ws.levels.resize(levels_.size());
  for (std::size_t m = 0; m < levels_.size(); ++m) ws.levels[m].resize(levels_[m].parts.size());
  ws.powers.resize(levels_.size());
  for (std::size_t m = 1; m < levels_.size(); ++m) {
    ws.powers[m].resize(static_cast<std::size_t>(max_degree_) + 1);
    ws.powers[m][0] = 1.0;
    if (max_degree_ >= 1) ws.powers[m][1] = x[m - 1];
  }
  ws.levels[0][0] = 1.0;
  ws.done_degree = -1;
}

void JackPlan::eval_layer(int k, JackWorkspace& ws) const {
  if (k != ws.done_degree + 1 || k > max_degree_) throw std::logic_error("Jack plan: layers out of order");
  for (std::size_t m = 1; m < levels_.size(); ++m) {
    auto& pw = ws.powers[m];
    if (k >= 2) pw[static_cast<std::size_t>(k)] = pw[static_cast<std::size_t>(k) - 1] * pw[1];
    const Level& lv = levels_[m];
    const std::vector<cd>& prev = ws.levels[m - 1];
    std::vector<cd>& cur = ws.levels[m];
    for (std::size_t i = lv.layer_start[static_cast<std::size_t>(k)]; i < lv.layer_start[static_cast<std::size_t>(k) + 1]; ++i) {
      cd acc = 0.0;
      for (std::size_t b = lv.branch_start[i]; b < lv.branch_start[i + 1]; ++b) {
        const Branch& br = lv.branches[b];
        acc += br.psi * pw[br.excess] * prev[br.mu];
      }
      cur[i] = acc;
    }
  }
  ws.done_degree = k;
}

std::vector<cd> JackPlan::evaluate_all(std::span<const cd> x, int k_max) const {
  if (k_max > max_degree_) throw ValidationError("Jack plan: degree beyond plan");
  JackWorkspace ws;
  begin(x, ws);
  for (int k = 0; k <= k_max; ++k) eval_layer(k, ws);
  std::vector<cd> out(values(ws).begin(), values(ws).begin() + static_cast<std::ptrdiff_t>(layer_end(k_max)));
  return out;
}

std::shared_ptr<const JackPlan> jack_plan(int nvars, double alpha, int min_degree) {
  require_alpha(alpha);
  using Key = std::pair<int, std::uint64_t>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const JackPlan>> cache;
  const Key key{nvars, std::bit_cast<std::uint64_t>(alpha)};
  {
    std::lock_guard<std::mutex> lock(mu);
    const auto it = cache.find(key);
    if (it != cache.end() && it->second->max_degree() >= min_degree) return it->second;
  }
  const int degree = ((std::max(min_degree, 1) + 9) / 10) * 10;
  auto plan = std::make_shared<const JackPlan>(nvars, alpha, degree);
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (!slot || slot->max_degree() < degree) slot = plan;
  return slot->max_degree() >= min_degree ? slot : plan;
}

cd jack_C(const Partition& lambda, double alpha, const Spectrum& xi) {
  require_alpha(alpha);
  if (xi.size() == 0) throw ValidationError("jack_C: empty argument");
  if (lambda.length() > static_cast<int>(xi.size())) return 0.0;
  const Spectrum sorted = chamber_sorted(xi);
  const auto plan = jack_plan(static_cast<int>(xi.size()), alpha, lambda.weight());
  const auto idx = plan->index_of(lambda);
  const std::vector<cd> vals = plan->evaluate_all(sorted.values, lambda.weight());
  return std::exp(plan->log_p_to_c(static_cast<std::size_t>(idx))) * vals[static_cast<std::size_t>(idx)];
}

cd zonal_Z(const Partition& lambda, const FieldParams& fp, const Spectrum& x) {
  if (static_cast<int>(x.size()) != fp.q) throw ValidationError("zonal_Z: spectrum length must equal q");
  return jack_C(lambda, fp.alpha, x);
}

cd pochhammer_gen(cd mu, const Partition& lambda, double alpha) {
  require_alpha(alpha);
  cd r = 1.0;
  for (int j = 0; j < lambda.length(); ++j) {
    const cd base = mu - static_cast<double>(j) / alpha;
    for (int i = 0; i < lambda[j]; ++i) r *= base + static_cast<double>(i);
  }
  return r;
}

double jack_at_ones(const Partition& lambda, double alpha, int q) {
  require_alpha(alpha);
  if (q < 1) throw ValidationError("jack_at_ones: q must be >= 1");
  if (lambda.length() > q) return 0.0;
  const auto plan = jack_plan(q, alpha, lambda.weight());
  const auto idx = static_cast<std::size_t>(plan->index_of(lambda));
  return std::exp(plan->log_p_to_c(idx)) * plan->p_at_ones(idx);
}

}  // namespace conebessel
