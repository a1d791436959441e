// SPDX-License-Identifier: Apache-2.0
#include "conebessel/bessel.hpp"

#include <cmath>
#include <limits>

#include "conebessel/errors.hpp"
#include "conebessel/measures.hpp"
#include "conebessel/mc.hpp"

namespace conebessel {

namespace {

void require_rank(const FieldParams& fp, int rank, const char* what) {
  if (rank != fp.q) throw ValidationError(std::string(what) + ": matrix rank differs from q");
}

Json spectrum_json(const CVec& v) {
  Json a = Json::array();
  for (const cd& z : v) a.push_back(complex_json(z));
  return a;
}

}  // namespace

BesselValue bessel_J(cd mu, const Spectrum& x, const FieldParams& fp, const SeriesControl& ctrl) {
  if (static_cast<int>(x.size()) != fp.q) throw ValidationError("bessel_J: spectrum length must equal q");
  const BesselSeries j(mu, fp.q, fp.alpha, ctrl);
  return j(x);
}

BesselValue f_mu(const HermMatrix& s, const ConePoint& r, cd mu, const FieldParams& fp, const SeriesControl& ctrl) {
  require_rank(fp, s.rank(), "f_mu");
  require_rank(fp, r.rank(), "f_mu");
  const Mat arg = 0.25 * r.matrix() * s.matrix() * r.matrix();
  const BesselSeries j(mu, fp.q, fp.alpha, ctrl);
  return j.at_matrix(0.5 * (arg + arg.adjoint()));
}

BesselValue f_mu_complex(const Mat& s, const ConePoint& r, cd mu, const FieldParams& fp, const SeriesControl& ctrl) {
  require_rank(fp, static_cast<int>(s.rows()), "f_mu");
  require_rank(fp, r.rank(), "f_mu");
  if (s.rows() != s.cols()) throw ValidationError("f_mu: s must be square");
  Spectrum x;
  x.values = complex_eigenvalues(0.25 * r.matrix() * s * r.matrix());
  return bessel_J(mu, x, fp, ctrl);
}

BesselValue phi_mu(const HermMatrix& s, const ConePoint& r, cd mu, const FieldParams& fp, const SeriesControl& ctrl) {
  const Mat sq = s.matrix() * s.matrix();
  return f_mu(HermMatrix(0.5 * (sq + sq.adjoint()), s.field()), r, mu, fp, ctrl);
}

BesselValue phi_mu_complex(const Mat& s, const ConePoint& r, cd mu, const FieldParams& fp,
                           const SeriesControl& ctrl) {
  return f_mu_complex(s * s, r, mu, fp, ctrl);
}

cd olshanski_psi(const Mat& b, const ConePoint& a) {
  if (b.rows() != a.rank() || b.cols() != a.rank()) throw ValidationError("olshanski_psi: shape mismatch");
  const Mat a2 = a.matrix() * a.matrix();
  return std::exp(-(a2 * b).trace());
}

VerificationReport verify_psi_functional(const Mat& b, const ConePoint& a, const ConePoint& c, double tol) {
  if (a.rank() != c.rank()) throw ValidationError("verify_psi_functional: rank mismatch");
  VerificationReport rep;
  rep.identity = "psi-functional";
  {
    ReportTimer timer(rep);
    const Mat sum = a.matrix() * a.matrix() + c.matrix() * c.matrix();
    const ConePoint root = psd_sqrt(ConePoint(HermMatrix(sum, a.field())));
    rep.lhs = olshanski_psi(b, a) * olshanski_psi(b, c);
    rep.rhs = olshanski_psi(b, root);
    rep.tolerance = tol;
    rep.params = {{"q", a.rank()},
                  {"field", to_string(a.field())},
                  {"b", matrix_json(b)},
                  {"a", matrix_json(a.matrix())},
                  {"c", matrix_json(c.matrix())}};
  }
  rep.finalize();
  return rep;
}

std::vector<RateRow> limit_rate(const ConePoint& y, std::span<const double> mus, const FieldParams& fp,
                                const SeriesControl& ctrl) {
  require_rank(fp, y.rank(), "limit_rate");
  const EigenSystem es = hermitian_eigen(y.matrix());
  double tr = 0.0;
  for (double v : es.values) tr += v;
  const double target = std::exp(-tr);
  std::vector<RateRow> rows;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const double mu = mus[i];
    if (mu < 2.0 * fp.q) throw ValidationError("limit_rate: every mu must be >= 2q");
    if (i > 0 && !(mu > mus[i - 1])) throw ValidationError("limit_rate: mu list must be ascending");
    Spectrum x;
    for (double v : es.values) x.values.emplace_back(mu * v);
    const BesselValue j = bessel_J(mu, x, fp, ctrl);
    if (!j.converged) throw DomainError("limit_rate: series did not converge at mu = " + std::to_string(mu));
    RateRow row;
    row.mu = mu;
    row.error = std::abs(j.value - target);
    row.ratio = rows.empty() ? std::numeric_limits<double>::quiet_NaN() : rows.back().error / row.error;
    rows.push_back(row);
  }
  return rows;
}

VerificationReport rate_report(std::string identity, const std::vector<RateRow>& rows, double lo, double hi) {
  VerificationReport rep;
  rep.identity = std::move(identity);
  const double nominal = 0.5 * (lo + hi);
  double worst = nominal;
  bool ok = rows.size() >= 2;
  Json table = Json::array();
  for (const RateRow& r : rows) {
    Json row{{"mu", r.mu}, {"error", r.error}};
    if (std::isnan(r.ratio)) {
      row["ratio"] = nullptr;
    } else {
      row["ratio"] = r.ratio;
      if (!(r.ratio >= lo && r.ratio <= hi)) ok = false;
      if (!(std::abs(r.ratio - nominal) <= std::abs(worst - nominal))) worst = r.ratio;
    }
    table.push_back(row);
  }
  rep.extra["table"] = table;
  rep.extra["ratio_range"] = {lo, hi};
  rep.lhs = worst;
  rep.rhs = nominal;
  rep.abs_err = std::abs(worst - nominal);
  rep.rel_err = rep.abs_err / nominal;
  rep.tolerance = (hi - lo) / (hi + lo);
  rep.pass = ok && rep.rel_err <= *rep.tolerance;
  rep.notes = "lhs is the successive error ratio farthest from the nominal 1/mu ratio; rel_err is relative to the nominal value";
  return rep;
}

McEstimate wolf_haar_oracle(const RectMatrix& x, const FieldParams& fp, std::size_t samples, std::uint64_t seed) {
  if (samples < 1000) throw ValidationError("wolf_haar_oracle needs at least 1000 samples");
  if (fp.field == Field::H) throw ValidationError("wolf_haar_oracle: quaternionic case unsupported");
  const int p = static_cast<int>(x.entries.rows());
  const int q = static_cast<int>(x.entries.cols());
  if (q != fp.q || p < q) throw ValidationError("wolf_haar_oracle: need a p x q matrix with p >= q");
  return mc_mean(samples, seed, [&](RngStream& rng) {
    thread_local Mat frame;
    haar_frame(p, q, fp.field, rng, frame);
    const double pairing = frame.cwiseProduct(x.entries.conjugate()).sum().real();
    return std::polar(1.0, -pairing);
  });
}

VerificationReport verify_wolf_haar(const RectMatrix& x, const FieldParams& fp, std::size_t samples,
                                    std::uint64_t seed, const SeriesControl& ctrl) {
  VerificationReport rep;
  rep.identity = "wolf-haar";
  rep.seed = seed;
  {
    ReportTimer timer(rep);
    const int p = static_cast<int>(x.entries.rows());
    const Mat g = 0.25 * x.entries.adjoint() * x.entries;
    const EigenSystem es = hermitian_eigen(0.5 * (g + g.adjoint()));
    Spectrum spec = Spectrum::from_real(es.values);
    const BesselValue j = bessel_J(0.5 * p * fp.d, spec, fp, ctrl);
    const McEstimate mc = wolf_haar_oracle(x, fp, samples, seed);
    rep.lhs = j.value;
    rep.rhs = mc.value;
    rep.mc_stderr = mc.std_error;
    rep.sigma_bound = 3.0;
    rep.params = {{"p", p}, {"q", fp.q}, {"field", to_string(fp.field)}, {"samples", samples}};
    rep.extra["spectrum"] = spectrum_json(spec.values);
    rep.extra["series_degree"] = j.truncation_degree;
  }
  rep.finalize();
  return rep;
}

}  // namespace conebessel
