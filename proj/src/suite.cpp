// SPDX-License-Identifier: Apache-2.0
#include "conebessel/suite.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <chrono>
#include <cmath>
#include <sstream>

#include "conebessel/bessel.hpp"
#include "conebessel/dunkl.hpp"
#include "conebessel/hypergroup.hpp"
#include "conebessel/jack.hpp"
#include "conebessel/laplace.hpp"
#include "conebessel/measures.hpp"

namespace conebessel {

namespace {

using Reports = std::vector<VerificationReport>;

// Streams for random test inputs, disjoint from the Monte Carlo streams of
// the checks themselves (those use stream = chunk index).
constexpr std::uint64_t kInputStream = 1ULL << 40;

ConePoint diag(std::vector<double> v, Field f = Field::R) { return ConePoint::diagonal(v, f); }

std::size_t scaled(std::size_t n, const SuiteOptions& o) { return o.quick ? n / 10 : n; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

Reports jack_normalization(const SuiteOptions& o) {
  Reports out;
  RngStream rng(o.seed, kInputStream + 1);
  for (double alpha : {2.0, 1.0, 0.5}) {
    for (int q = 1; q <= 3; ++q) {
      VerificationReport rep;
      rep.identity = "jack-normalization";
      rep.seed = o.seed;
      double worst = -1.0;
      {
        ReportTimer timer(rep);
        const auto plan = jack_plan(q, alpha, 8);
        for (int trial = 0; trial < 20; ++trial) {
          CVec xi(q);
          cd tr = 0.0;
          for (cd& v : xi) {
            v = rng.uniform(0.1, 1.5);
            tr += v;
          }
          const std::vector<cd> p = plan->evaluate_all(xi, 8);
          for (int k = 0; k <= 8; ++k) {
            cd sum = 0.0;
            for (std::size_t i = plan->layer_begin(k); i < plan->layer_end(k); ++i)
              sum += std::exp(plan->log_p_to_c(i)) * p[i];
            const cd target = std::pow(tr, k);
            const double rel = std::abs(sum - target) / std::abs(target);
            if (rel > worst) {
              worst = rel;
              rep.lhs = sum;
              rep.rhs = target;
            }
          }
        }
      }
      rep.params = {{"alpha", alpha}, {"q", q}, {"k_max", 8}, {"trials", 20}};
      rep.tolerance = 1e-9;
      rep.finalize();
      out.push_back(std::move(rep));
    }
  }
  return out;
}

Reports scalar_reduction(const SuiteOptions& o) {
  Reports out;
  const FieldParams fp(Field::R, 1);
  for (double mu : {0.8, 1.0, 2.5, 5.0}) {
    VerificationReport rep;
    rep.identity = "scalar-reduction";
    rep.seed = o.seed;
    double worst = -1.0;
    {
      ReportTimer timer(rep);
      for (int i = 0; i <= 16; ++i) {
        const double z = 0.25 * i;
        const cd j = bessel_J(mu, Spectrum::from_real(std::vector<double>{0.25 * z * z}), fp).value;
        const double ref = z == 0.0 ? 1.0
                                    : std::tgamma(mu) * std::pow(0.5 * z, 1.0 - mu) *
                                          boost::math::cyl_bessel_j(mu - 1.0, z);
        const double err = std::abs(j - ref);
        if (err > worst) {
          worst = err;
          rep.lhs = j;
          rep.rhs = ref;
        }
      }
    }
    rep.params = {{"mu", mu}, {"z_min", 0.0}, {"z_max", 4.0}, {"points", 17}};
    rep.tolerance = 1e-10;
    rep.finalize();
    rep.rel_err = rep.abs_err;
    rep.pass = rep.abs_err <= 1e-10;
    rep.notes = "absolute criterion: rel_err reports abs_err";
    out.push_back(std::move(rep));
  }
  return out;
}

Reports product_formula(const SuiteOptions& o) {
  const std::size_t n = scaled(1'000'000, o);
  Reports out;
  const FieldParams r1(Field::R, 1);
  out.push_back(verify_product_formula(2.0, diag({1.0}), diag({1.0}), r1, n, o.seed, 1e-2));
  out.push_back(verify_product_formula(3.5, diag({1.0}), diag({1.0}), r1, n, o.seed + 1, 1e-2));
  for (Field f : {Field::R, Field::C}) {
    const FieldParams fp(f, 2);
    out.push_back(verify_product_formula(3.0, diag({1.0, 0.5}, f), diag({0.8, 0.3}, f), fp, n, o.seed + 2, 3e-2));
  }
  return out;
}

Reports multiplicativity(const SuiteOptions& o) {
  const std::size_t n = scaled(1'000'000, o);
  Reports out;
  const FieldParams r1(Field::R, 1);
  const HermMatrix s1 = HermMatrix::identity(1, Field::R);
  for (double mu : {2.0, 3.5})
    out.push_back(verify_multiplicativity(s1, diag({0.7}), diag({1.3}), mu, r1, n, o.seed + 3, 1e-2));
  for (Field f : {Field::R, Field::C}) {
    const FieldParams fp(f, 2);
    Mat s(2, 2);
    s << 1.0, cd(0.3, f == Field::C ? 0.2 : 0.0), cd(0.3, f == Field::C ? -0.2 : 0.0), 0.5;
    out.push_back(verify_multiplicativity(HermMatrix(s, f), diag({1.0, 0.5}, f), diag({0.8, 0.3}, f), 3.0, fp, n,
                                          o.seed + 4, 3e-2));
  }
  return out;
}

Reports wolf_haar(const SuiteOptions& o) {
  Mat x(4, 2);
  x << 1.0, 0.2, 0.3, -0.5, -0.4, 0.6, 0.1, 0.3;
  return {verify_wolf_haar(RectMatrix{x, Field::R}, FieldParams(Field::R, 2), scaled(100'000, o), o.seed + 5)};
}

Reports harish_chandra_dunkl(const SuiteOptions& o) {
  const std::vector<double> xi{1.0, 0.5};
  const std::vector<double> eta{0.7, 0.2};
  Reports out;
  for (Field f : {Field::R, Field::C}) {
    const FieldParams fp(f, 2);
    out.push_back(verify_harish_chandra(fp, xi, eta, scaled(100'000, o), o.seed + 6));
    out.push_back(verify_dunklchar(3.0, fp, xi, eta, scaled(100'000, o), o.seed + 7));
  }
  return out;
}

Reports limit_exp(const SuiteOptions& o) {
  const std::vector<double> mus{8, 16, 32, 64};
  VerificationReport rep = rate_report("limit-exp", limit_rate(diag({0.5, 1.0}), mus, FieldParams(Field::R, 2)));
  rep.params = {{"q", 2}, {"field", "R"}, {"y", {0.5, 1.0}}, {"mu", mus}};
  rep.seed = o.seed;
  return {rep};
}

Reports limit_b_to_a(const SuiteOptions& o) {
  const std::vector<double> mus{32, 64, 128};
  const std::vector<double> xi{1.0, 0.5};
  const std::vector<double> b{0.3, 0.1};
  VerificationReport rep = rate_report("limit-BtoA", b_to_a_limit(FieldParams(Field::R, 2), xi, b, mus));
  rep.params = {{"q", 2}, {"field", "R"}, {"xi", xi}, {"b", b}, {"mu", mus}};
  rep.seed = o.seed;
  return {rep};
}

Reports laplace(const SuiteOptions&) {
  const FieldParams r1(Field::R, 1);
  const FieldParams r2(Field::R, 2);
  Mat m(2, 2);
  m << 1.0, 0.2, 0.2, 0.5;
  return {verify_laplace(2.0, diag({1.0}), r1), verify_laplace_mod(2.0, diag({3.0}), diag({1.0}), r1),
          verify_laplace(2.0, diag({1.0, 2.0}), r2),
          verify_laplace_mod(2.0, ConePoint(HermMatrix(m, Field::R)), diag({1.0, 2.0}), r2)};
}

Reports addition(const SuiteOptions&) {
  const FieldParams r1(Field::R, 1);
  const FieldParams r2(Field::R, 2);
  return {verify_addition(1.0, 1.0, diag({1.0}), diag({0.0}), diag({1.0}), r1),
          verify_addition(1.5, 2.0, diag({0.7}), diag({1.2}), diag({1.3}), r1),
          verify_addition(2.0, 2.0, diag({1.0, 1.0}), diag({1.0, 0.0}), diag({1.0, 1.0}), r2)};
}

Reports sonine(const SuiteOptions&) {
  const FieldParams r1(Field::R, 1);
  const FieldParams r2(Field::R, 2);
  Mat x(2, 2);
  x << 1.5, 0.2, 0.2, 1.0;
  return {sonine_eval(1.0, 1.0, diag({1.0}), r1), sonine_eval(2.0, 3.0, diag({1.0, 0.5}), r2),
          sonine_phi(1.5, 2.0, diag({1.0}), diag({2.0}), r1),
          sonine_phi(2.0, 3.0, diag({1.0, 0.5}), ConePoint(HermMatrix(x, Field::R)), r2)};
}

Reports polar_route(const SuiteOptions& o) {
  return {verify_route_consistency(2, 6, diag({1.0}), diag({2.0}), FieldParams(Field::R, 1), scaled(200'000, o),
                                   o.seed + 8)};
}

Reports beta_projection(const SuiteOptions& o) {
  const std::size_t n = scaled(200'000, o);
  return {verify_beta_projection(2, 1, Field::R, 3, 3, n, o.seed + 9),
          verify_beta_projection(2, 1, Field::C, 2, 3, n, o.seed + 10)};
}

Reports example_q2(const SuiteOptions&) {
  const std::vector<std::pair<double, double>> grid{{0.5, 0.0}, {1.0, 0.5}, {1.2, 0.3}, {1.5, 1.0},
                                                    {std::sqrt(2.0), 0.0}, {2.0, 1.0}, {2.0, 1.5}, {1.8, 0.2},
                                                    {2.2, 1.1}, {0.9, 0.9}};
  return {verify_example_q2(grid, 1e-8)};
}

Mat random_herm(RngStream& rng, Field f, double scale) {
  Mat g;
  gaussian_matrix(2, 2, f, rng, g);
  Mat h = 0.5 * scale * (g + g.adjoint());
  if (f == Field::R) h = h.real().cast<cd>();
  return h;
}

Reports psi_functional(const SuiteOptions& o) {
  RngStream rng(o.seed, kInputStream + 15);
  Reports out;
  for (int i = 0; i < 50; ++i) {
    const Field f = i % 2 == 0 ? Field::R : Field::C;
    Mat g;
    gaussian_matrix(2, 2, f, rng, g);
    const ConePoint a = ConePoint::trusted(0.5 * g * g.adjoint(), f);
    gaussian_matrix(2, 2, f, rng, g);
    const ConePoint c = ConePoint::trusted(0.5 * g * g.adjoint(), f);
    const Mat b = random_herm(rng, f, 0.5) + cd(0.0, 1.0) * random_herm(rng, f, 0.5);
    VerificationReport rep = verify_psi_functional(b, a, c, 1e-12);
    rep.seed = o.seed;
    out.push_back(std::move(rep));
  }
  return out;
}

struct Criterion {
  const char* name;
  Reports (*run)(const SuiteOptions&);
};

const Criterion kCriteria[kCriterionCount] = {
    {"Jack normalization", jack_normalization},
    {"scalar reduction", scalar_reduction},
    {"product formula", product_formula},
    {"multiplicativity", multiplicativity},
    {"Wolf-Haar identity", wolf_haar},
    {"Harish-Chandra and Dunkl-char", harish_chandra_dunkl},
    {"exponential limit rate", limit_exp},
    {"B-to-A limit rate", limit_b_to_a},
    {"Laplace identity", laplace},
    {"addition theorem", addition},
    {"Sonine and Sonine-phi", sonine},
    {"polar route vs Sonine-phi", polar_route},
    {"beta projection", beta_projection},
    {"q=2 explicit example", example_q2},
    {"psi_b functional equation", psi_functional},
};

}  // namespace

std::string criterion_name(int id) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("criterion id out of range");
  return kCriteria[id - 1].name;
}

CriterionOutcome run_criterion(int id, const SuiteOptions& opts) {
  CriterionOutcome out;
  out.id = id;
  out.name = criterion_name(id);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    out.reports = kCriteria[id - 1].run(opts);
    out.pass = !out.reports.empty();
    double worst = 0.0;
    int failed = 0;
    for (const VerificationReport& r : out.reports) {
      if (!r.pass) {
        out.pass = false;
        ++failed;
      }
      worst = std::max(worst, r.rel_err);
    }
    out.summary = std::to_string(out.reports.size() - failed) + "/" + std::to_string(out.reports.size()) +
                  " checks, worst rel_err " + fmt(worst);
  } catch (const std::exception& e) {
    out.pass = false;
    out.summary = std::string("error: ") + e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

SuiteSummary run_suite(const SuiteOptions& opts, const std::function<void(const CriterionOutcome&)>& on_done) {
  SuiteSummary s;
  for (int id = 1; id <= kCriterionCount; ++id) {
    CriterionOutcome c = run_criterion(id, opts);
    (c.pass ? s.passed : s.failed) += 1;
    if (on_done) on_done(c);
    s.criteria.push_back(std::move(c));
  }
  return s;
}

Json CriterionOutcome::to_json(bool with_timestamp) const {
  Json j;
  j["id"] = id;
  j["name"] = name;
  j["pass"] = pass;
  j["summary"] = summary;
  j["seconds"] = with_timestamp ? seconds : 0.0;
  Json reps = Json::array();
  for (const VerificationReport& r : reports) reps.push_back(r.to_json(with_timestamp));
  j["reports"] = std::move(reps);
  return j;
}

Json SuiteSummary::to_json(bool with_timestamp) const {
  Json j;
  j["schema"] = 1;
  j["passed"] = passed;
  j["failed"] = failed;
  j["pass"] = all_pass();
  Json list = Json::array();
  for (const CriterionOutcome& c : criteria) list.push_back(c.to_json(with_timestamp));
  j["criteria"] = std::move(list);
  return j;
}

}  // namespace conebessel
