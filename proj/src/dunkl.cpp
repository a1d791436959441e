// SPDX-License-Identifier: Apache-2.0
#include "conebessel/dunkl.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "conebessel/errors.hpp"
#include "conebessel/mc.hpp"
#include "conebessel/measures.hpp"

namespace conebessel {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b || a == 0) throw ValidationError(std::string(what) + ": arguments must have equal, non-zero length");
}

CVec to_complex(std::span<const double> v) { return CVec(v.begin(), v.end()); }

Json vec_json(std::span<const double> v) { return Json(std::vector<double>(v.begin(), v.end())); }

Mat diag_matrix(std::span<const double> v) {
  Mat m = Mat::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = v[i];
  return m;
}

}  // namespace

MultiplicityB::MultiplicityB(double a, double b) : k1(a), k2(b) {
  if (!(k1 >= 0.0)) throw ValidationError("multiplicity k1 must be >= 0");
  if (!(k2 > 0.0)) throw ValidationError("multiplicity k2 must be > 0");
}

MultiplicityB MultiplicityB::geometric(double mu, int d, int q) {
  return MultiplicityB(mu - 0.5 * (d * (q - 1) + 1), 0.5 * d);
}

SeriesValue hyp0F0(std::span<const cd> xi, std::span<const cd> eta, double alpha, const SeriesControl& ctrl) {
  require_same_length(xi.size(), eta.size(), "hyp0F0");
  const JackSeries s(2, static_cast<int>(xi.size()), alpha, std::nullopt, 1.0, ctrl);
  return s.evaluate(xi, eta);
}

SeriesValue hyp0F1(cd mu, std::span<const cd> xi, std::span<const cd> eta, double alpha, const SeriesControl& ctrl) {
  require_same_length(xi.size(), eta.size(), "hyp0F1");
  const JackSeries s(2, static_cast<int>(xi.size()), alpha, mu, 1.0, ctrl);
  return s.evaluate(xi, eta);
}

SeriesValue dunkl_bessel_A(double k, std::span<const cd> xi, std::span<const cd> eta, const SeriesControl& ctrl) {
  if (!(k > 0.0)) throw ValidationError("type-A multiplicity must be positive");
  return hyp0F0(xi, eta, 1.0 / k, ctrl);
}

SeriesValue dunkl_bessel_B(const MultiplicityB& k, std::span<const cd> xi, std::span<const cd> eta,
                           const SeriesControl& ctrl) {
  require_same_length(xi.size(), eta.size(), "dunkl_bessel_B");
  CVec x2(xi.size()), y2(eta.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    x2[i] = 0.5 * xi[i] * xi[i];
    y2[i] = 0.5 * eta[i] * eta[i];
  }
  return hyp0F1(k.mu(static_cast<int>(xi.size())), x2, y2, k.alpha(), ctrl);
}

SeriesValue dunkl_bessel_B_imag(const MultiplicityB& k, std::span<const double> xi, std::span<const double> eta,
                                const SeriesControl& ctrl) {
  require_same_length(xi.size(), eta.size(), "dunkl_bessel_B");
  CVec x2(xi.size()), y2(eta.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    x2[i] = 0.5 * xi[i] * xi[i];
    y2[i] = -0.5 * eta[i] * eta[i];
  }
  return hyp0F1(k.mu(static_cast<int>(xi.size())), x2, y2, k.alpha(), ctrl);
}

McEstimate harish_chandra_mc(const FieldParams& fp, std::span<const double> xi, std::span<const double> eta,
                             std::size_t samples, std::uint64_t seed) {
  if (static_cast<int>(xi.size()) != fp.q || static_cast<int>(eta.size()) != fp.q)
    throw ValidationError("harish_chandra_mc: vectors must have length q");
  const Mat x = diag_matrix(xi);
  const Mat y = diag_matrix(eta);
  return mc_mean(samples, seed, [&](RngStream& rng) {
    thread_local Mat u;
    haar_frame(fp.q, fp.q, fp.field, rng, u);
    return std::exp((y * u * x * u.adjoint()).trace());
  });
}

VerificationReport verify_harish_chandra(const FieldParams& fp, std::span<const double> xi,
                                         std::span<const double> eta, std::size_t samples, std::uint64_t seed,
                                         const SeriesControl& ctrl) {
  VerificationReport rep;
  rep.identity = "harish-chandra";
  rep.seed = seed;
  {
    ReportTimer timer(rep);
    const SeriesValue s = hyp0F0(to_complex(xi), to_complex(eta), fp.alpha, ctrl);
    const McEstimate mc = harish_chandra_mc(fp, xi, eta, samples, seed);
    rep.lhs = s.value;
    rep.rhs = mc.value;
    rep.mc_stderr = mc.std_error;
    rep.sigma_bound = 3.0;
    rep.params = {{"q", fp.q}, {"field", to_string(fp.field)}, {"xi", vec_json(xi)}, {"eta", vec_json(eta)},
                  {"samples", samples}};
    rep.extra["series_degree"] = s.truncation_degree;
  }
  rep.finalize();
  return rep;
}

McEstimate dunklchar_mc(double mu, const FieldParams& fp, std::span<const double> xi, std::span<const double> eta,
                        std::size_t samples, std::uint64_t seed, const SeriesControl& ctrl) {
  if (static_cast<int>(xi.size()) != fp.q || static_cast<int>(eta.size()) != fp.q)
    throw ValidationError("dunklchar_mc: vectors must have length q");
  std::vector<double> xi2(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) xi2[i] = xi[i] * xi[i];
  const Mat x2 = diag_matrix(xi2);
  const Mat e = diag_matrix(eta);
  const BesselSeries j(mu, fp.q, fp.alpha, ctrl);
  return mc_mean(samples, seed, [&](RngStream& rng) {
    thread_local Mat u;
    haar_frame(fp.q, fp.q, fp.field, rng, u);
    Mat arg = 0.25 * e * u * x2 * u.adjoint() * e;
    arg = 0.5 * (arg + arg.adjoint()).eval();
    const SeriesValue v = j.at_matrix(arg);
    if (!v.converged) throw DomainError("dunklchar_mc: Bessel series did not converge");
    return v.value;
  });
}

VerificationReport verify_dunklchar(double mu, const FieldParams& fp, std::span<const double> xi,
                                    std::span<const double> eta, std::size_t samples, std::uint64_t seed,
                                    const SeriesControl& ctrl) {
  VerificationReport rep;
  rep.identity = "dunklchar";
  rep.seed = seed;
  {
    ReportTimer timer(rep);
    const MultiplicityB k = MultiplicityB::geometric(mu, fp.d, fp.q);
    const SeriesValue s = dunkl_bessel_B_imag(k, xi, eta, ctrl);
    const McEstimate mc = dunklchar_mc(mu, fp, xi, eta, samples, seed, ctrl);
    rep.lhs = s.value;
    rep.rhs = mc.value;
    rep.mc_stderr = mc.std_error;
    rep.sigma_bound = 3.0;
    rep.params = {{"mu", mu}, {"q", fp.q}, {"field", to_string(fp.field)}, {"xi", vec_json(xi)},
                  {"eta", vec_json(eta)}, {"samples", samples}};
    rep.extra["k1"] = k.k1;
    rep.extra["k2"] = k.k2;
  }
  rep.finalize();
  return rep;
}

std::vector<RateRow> b_to_a_limit(const FieldParams& fp, std::span<const double> xi, std::span<const double> b,
                                  std::span<const double> mus, const SeriesControl& ctrl) {
  if (static_cast<int>(xi.size()) != fp.q || static_cast<int>(b.size()) != fp.q)
    throw ValidationError("b_to_a_limit: vectors must have length q");
  CVec xi2(xi.size()), mb2(b.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    xi2[i] = xi[i] * xi[i];
    mb2[i] = -b[i] * b[i];
  }
  const SeriesValue limit = hyp0F0(xi2, mb2, fp.alpha, ctrl);
  if (!limit.converged) throw DomainError("b_to_a_limit: type-A series did not converge");
  std::vector<RateRow> rows;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const double mu = mus[i];
    if (mu < 2.0 * fp.q) throw ValidationError("b_to_a_limit: every mu must be >= 2q");
    if (i > 0 && !(mu > mus[i - 1])) throw ValidationError("b_to_a_limit: mu list must be ascending");
    const MultiplicityB k = MultiplicityB::geometric(mu, fp.d, fp.q);
    std::vector<double> scaled(xi.size());
    for (std::size_t j = 0; j < xi.size(); ++j) scaled[j] = 2.0 * std::sqrt(mu) * xi[j];
    const SeriesValue v = dunkl_bessel_B_imag(k, scaled, b, ctrl);
    if (!v.converged) throw DomainError("b_to_a_limit: type-B series did not converge at mu = " + std::to_string(mu));
    RateRow row;
    row.mu = mu;
    row.error = std::abs(v.value - limit.value);
    row.ratio = rows.empty() ? std::numeric_limits<double>::quiet_NaN() : rows.back().error / row.error;
    rows.push_back(row);
  }
  return rows;
}

double example_q2_psi(double xi1, double xi2) {
  if (!(xi1 >= xi2 && xi2 >= 0.0)) throw ValidationError("example_q2_psi: need xi1 >= xi2 >= 0");
  const double c = xi1 * xi1 - xi2 * xi2;
  if (c == 0.0) return 1.0;
  auto f = [c](double t) { return std::cos(c * std::cos(2.0 * t)); };
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, -M_PI, M_PI, 25, 1e-13, &err);
  return v / (2.0 * M_PI);
}

SeriesValue example_q2_series(double xi1, double xi2, const SeriesControl& ctrl) {
  const CVec x = {xi1 * xi1, xi2 * xi2};
  const CVec mb = {cd(0.0, -1.0), cd(0.0, 1.0)};
  return hyp0F0(x, mb, 2.0, ctrl);
}

VerificationReport verify_example_q2(std::span<const std::pair<double, double>> grid, double tol) {
  VerificationReport rep;
  rep.identity = "example-q2";
  rep.tolerance = tol;
  {
    ReportTimer timer(rep);
    Json rows = Json::array();
    double worst = -1.0;
    for (const auto& [x1, x2] : grid) {
      const double quad = example_q2_psi(x1, x2);
      const SeriesValue ser = example_q2_series(x1, x2);
      const double classical = std::cyl_bessel_j(0.0, x1 * x1 - x2 * x2);
      const double dev = std::max({std::abs(ser.value - quad), std::abs(quad - classical),
                                   std::abs(ser.value - classical)});
      rows.push_back({{"xi", {x1, x2}},
                      {"quadrature", quad},
                      {"series", complex_json(ser.value)},
                      {"bessel_j0", classical},
                      {"max_deviation", dev}});
      if (dev > worst) {
        worst = dev;
        rep.lhs = ser.value;
        rep.rhs = quad;
      }
    }
    rep.extra["grid"] = rows;
    rep.params = {{"points", grid.size()}};
    rep.abs_err = worst;
    rep.rel_err = worst;
    rep.pass = !grid.empty() && worst <= tol;
    rep.notes = "abs_err is the largest pairwise deviation among the three routes over the grid";
  }
  return rep;
}

VerificationReport verify_degenerate_product(const FieldParams& fp, std::span<const double> xi,
                                             std::span<const double> eta, std::span<const double> b,
                                             std::size_t samples, std::uint64_t seed, const SeriesControl& ctrl) {
  if (static_cast<int>(xi.size()) != fp.q || static_cast<int>(eta.size()) != fp.q ||
      static_cast<int>(b.size()) != fp.q)
    throw ValidationError("degenerate product: vectors must have length q");
  VerificationReport rep;
  rep.identity = "degenerate-product";
  rep.seed = seed;
  {
    ReportTimer timer(rep);
    const JackSeries series(2, fp.q, fp.alpha, std::nullopt, 1.0, ctrl);
    CVec mb(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) mb[i] = -b[i];
    auto psi_sq = [&](const CVec& squares) {
      const SeriesValue v = series.evaluate(squares, mb);
      if (!v.converged) throw DomainError("degenerate product: 0F0 series did not converge");
      return v.value;
    };
    CVec x2(xi.size()), y2(eta.size());
    std::vector<double> e2(eta.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
      x2[i] = xi[i] * xi[i];
      y2[i] = eta[i] * eta[i];
      e2[i] = eta[i] * eta[i];
    }
    Mat xm = Mat::Zero(fp.q, fp.q);
    for (int i = 0; i < fp.q; ++i) xm(i, i) = x2[static_cast<std::size_t>(i)];
    const Mat ym = diag_matrix(e2);
    const McEstimate mc = mc_mean(samples, seed, [&](RngStream& rng) {
      thread_local Mat u;
      thread_local CVec spec;
      haar_frame(fp.q, fp.q, fp.field, rng, u);
      Mat m = xm + u * ym * u.adjoint();
      m = 0.5 * (m + m.adjoint()).eval();
      const EigenSystem es = hermitian_eigen(m);
      spec.assign(es.values.begin(), es.values.end());
      for (cd& v : spec) v = std::max(0.0, v.real());
      return psi_sq(spec);
    });
    rep.lhs = psi_sq(x2) * psi_sq(y2);
    rep.rhs = mc.value;
    rep.mc_stderr = mc.std_error;
    rep.sigma_bound = 3.0;
    rep.params = {{"q", fp.q}, {"field", to_string(fp.field)}, {"xi", vec_json(xi)}, {"eta", vec_json(eta)},
                  {"b", vec_json(b)}, {"samples", samples}};
  }
  rep.finalize();
  return rep;
}

}  // namespace conebessel
