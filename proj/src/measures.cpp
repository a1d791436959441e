// SPDX-License-Identifier: Apache-2.0
#include "conebessel/measures.hpp"

#include <algorithm>
#include <cmath>

#include "conebessel/errors.hpp"

namespace conebessel {

namespace {

constexpr int kCholeskyRetries = 64;
constexpr long kRejectionCap = 10'000'000;
constexpr double kIntervalTol = 1e-12;

void require_concrete(Field f, const char* what) {
  if (f == Field::H) throw ValidationError(std::string(what) + ": quaternionic sampling is not supported");
}

bool is_nonpositive_integer(cd z) {
  if (std::abs(z.imag()) > 1e-14) return false;
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z.real() - r) < 1e-14 * std::max(1.0, std::abs(r));
}

// max over t in [0,1] of t^a (1-t)^b for a, b >= 0.
double beta_kernel_max(double a, double b) {
  if (a == 0.0 && b == 0.0) return 1.0;
  const double t = a / (a + b);
  return std::pow(t, a) * std::pow(1.0 - t, b);
}

bool is_integer_param(double twice_over_d, int q) {
  return std::abs(twice_over_d - std::round(twice_over_d)) < 1e-12 && std::round(twice_over_d) >= q;
}

}  // namespace

void gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Field f, RngStream& rng, Mat& out) {
  require_concrete(f, "gaussian_matrix");
  out.resize(rows, cols);
  const double half = std::sqrt(0.5);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (f == Field::R) {
        out(i, j) = rng.normal();
      } else {
        const double re = rng.normal();
        const double im = rng.normal();
        out(i, j) = cd(half * re, half * im);
      }
    }
}

void haar_frame(int p, int q, Field f, RngStream& rng, Mat& out) {
  if (p < 1 || q < 1 || q > p) throw ValidationError("haar_frame: need 1 <= q <= p");
  gaussian_matrix(p, q, f, rng, out);
  for (Eigen::Index j = 0; j < q; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < j; ++i) {
        const cd c = out.col(i).dot(out.col(j));
        out.col(j) -= c * out.col(i);
      }
    const double nrm = out.col(j).norm();
    if (nrm == 0.0) throw DomainError("haar_frame: degenerate Gaussian draw");
    out.col(j) /= nrm;
  }
}

RectMatrix haar_unitary(int p, const FieldParams& fp, RngStream& rng) {
  RectMatrix u;
  u.field = fp.field;
  haar_frame(p, p, fp.field, rng, u.entries);
  return u;
}

cd complex_gamma(cd z) {
  static constexpr double g = 7.0;
  static constexpr double coef[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                     771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                     -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.imag() == 0.0) return std::tgamma(z.real());
  if (z.real() < 0.5) return M_PI / (std::sin(M_PI * z) * complex_gamma(1.0 - z));
  z -= 1.0;
  cd x = coef[0];
  for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
  const cd t = z + g + 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cd gamma_omega(const FieldParams& fp, cd mu) {
  cd r = std::pow(2.0 * M_PI, 0.5 * (fp.n - fp.q));
  for (int j = 0; j < fp.q; ++j) {
    const cd arg = mu - 0.5 * j * fp.d;
    if (is_nonpositive_integer(arg))
      throw DomainError("Gamma_Omega pole: factor Gamma(mu - " + std::to_string(j) + "*d/2) at a non-positive integer");
    r *= complex_gamma(arg);
  }
  return r;
}

double log_gamma_omega(const FieldParams& fp, double mu) {
  if (!(mu > fp.gamma_bound())) throw DomainError("log Gamma_Omega needs mu > d(q-1)/2");
  double r = 0.5 * (fp.n - fp.q) * std::log(2.0 * M_PI);
  for (int j = 0; j < fp.q; ++j) r += std::lgamma(mu - 0.5 * j * fp.d);
  return r;
}

double beta_const(const FieldParams& fp, double mu, double nu) {
  if (!(mu > fp.gamma_bound()) || !(nu > fp.gamma_bound()))
    throw ValidationError("beta constant needs mu, nu > d(q-1)/2");
  return std::exp(log_gamma_omega(fp, mu) + log_gamma_omega(fp, nu) - log_gamma_omega(fp, mu + nu));
}

BetaParams::BetaParams(FieldParams f, double m, double n) : fp(f), mu(m), nu(n) {
  if (!(mu > fp.gamma_bound()) || !(nu > fp.gamma_bound()))
    throw ValidationError("beta parameters need mu, nu > d(q-1)/2");
}

double beta_density_spectral(std::span<const double> eigenvalues, const BetaParams& params) {
  if (static_cast<int>(eigenvalues.size()) != params.fp.q) throw ValidationError("beta density: wrong spectrum length");
  const double e1 = params.exponent_mu();
  const double e2 = params.exponent_nu();
  double log_dens = -std::log(beta_const(params.fp, params.mu, params.nu));
  for (double t : eigenvalues) {
    if (t < -kIntervalTol || t > 1.0 + kIntervalTol) return 0.0;
    t = std::clamp(t, 0.0, 1.0);
    log_dens += e1 * std::log(t) + e2 * std::log1p(-t);
  }
  return std::exp(log_dens);
}

double beta_density(const ConePoint& y, const BetaParams& params) {
  if (y.rank() != params.fp.q) throw ValidationError("beta density: rank mismatch");
  const EigenSystem es = hermitian_eigen(y.matrix());
  return beta_density_spectral(es.values, params);
}

ConePoint sample_matrix_beta(int ptilde, Field f, int p, int r, RngStream& rng) {
  require_concrete(f, "sample_matrix_beta");
  if (ptilde < 1 || p < ptilde || r < ptilde)
    throw ValidationError("sample_matrix_beta: need p, r >= ptilde >= 1");
  Mat x, y;
  for (int attempt = 0; attempt < kCholeskyRetries; ++attempt) {
    gaussian_matrix(p, ptilde, f, rng, x);
    gaussian_matrix(r, ptilde, f, rng, y);
    const Mat s = x.adjoint() * x;
    const Mat sum = s + y.adjoint() * y;
    Eigen::LLT<Mat> llt(sum);
    if (llt.info() != Eigen::Success) continue;
    const Mat a = llt.matrixL().solve(x.adjoint());
    Mat l = a * a.adjoint();
    l = 0.5 * (l + l.adjoint()).eval();
    if (f == Field::R) l = l.real().cast<cd>();
    return ConePoint::trusted(std::move(l), f);
  }
  throw DomainError("sample_matrix_beta: S + T numerically singular in every retry");
}

ConePoint sample_beta(const BetaParams& params, RngStream& rng) {
  const FieldParams& fp = params.fp;
  require_concrete(fp.field, "sample_beta");
  if (fp.q == 1) {
    Mat m(1, 1);
    m(0, 0) = rng.beta(params.mu, params.nu);
    return ConePoint::trusted(std::move(m), fp.field);
  }
  const double pm = 2.0 * params.mu / fp.d;
  const double pn = 2.0 * params.nu / fp.d;
  if (is_integer_param(pm, fp.q) && is_integer_param(pn, fp.q))
    return sample_matrix_beta(fp.q, fp.field, static_cast<int>(std::lround(pm)), static_cast<int>(std::lround(pn)), rng);
  if (fp.q != 2) throw DomainError("sample_beta: non-integer parameters are supported for q <= 2 only");
  const double e1 = params.exponent_mu();
  const double e2 = params.exponent_nu();
  if (e1 < 0.0 || e2 < 0.0) throw DomainError("sample_beta: rejection sampler needs mu, nu >= n/q");
  const double bound = std::pow(beta_kernel_max(e1, e2), 2);
  Mat m(2, 2);
  for (long it = 0; it < kRejectionCap; ++it) {
    const double a = rng.uniform();
    const double c = rng.uniform();
    cd b = rng.uniform(-0.5, 0.5);
    if (fp.field == Field::C) b = cd(b.real(), rng.uniform(-0.5, 0.5));
    const double nb = std::norm(b);
    if (nb > a * c || nb > (1.0 - a) * (1.0 - c)) continue;
    const double tr = a + c;
    const double disc = std::sqrt(std::max(0.0, 0.25 * (a - c) * (a - c) + nb));
    const double t1 = 0.5 * tr + disc;
    const double t2 = 0.5 * tr - disc;
    const double val = std::pow(t1, e1) * std::pow(1.0 - t1, e2) * std::pow(t2, e1) * std::pow(1.0 - t2, e2);
    if (rng.uniform() * bound > val) continue;
    m << a, b, std::conj(b), c;
    return ConePoint::trusted(m, fp.field);
  }
  throw DomainError("sample_beta: rejection sampler exceeded its attempt cap");
}

ConePoint project_block(const ConePoint& y, int q) {
  if (q < 1 || q > y.rank()) throw ValidationError("project_block: need 1 <= q <= rank");
  return ConePoint::trusted(y.matrix().topLeftCorner(q, q), y.field());
}

ConePoint wishart_sample(const FieldParams& fp, int p, const ConePoint& sigma, RngStream& rng) {
  require_concrete(fp.field, "wishart_sample");
  if (p < fp.q) throw ValidationError("wishart_sample: need p >= q");
  if (sigma.rank() != fp.q) throw ValidationError("wishart_sample: scale rank mismatch");
  Mat x;
  gaussian_matrix(p, fp.q, fp.field, rng, x);
  const Mat root = psd_sqrt_unchecked(sigma.matrix());
  Mat w = root * (x.adjoint() * x) * root;
  w = 0.5 * (w + w.adjoint()).eval();
  if (fp.field == Field::R) w = w.real().cast<cd>();
  return ConePoint::trusted(std::move(w), fp.field);
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    const double c = -M_PI * M_PI / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k <= 50; ++k) cdf += std::exp(c * (2 * k - 1) * (2 * k - 1));
    cdf *= std::sqrt(2.0 * M_PI) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) s += ((k % 2) ? 2.0 : -2.0) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(s, 0.0, 1.0);
}

KsResult ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.size() < 100) throw ValidationError("ks_distance needs at least 100 samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  const double rn = std::sqrt(n);
  return {d, kolmogorov_survival((rn + 0.12 + 0.11 / rn) * d)};
}

}  // namespace conebessel
