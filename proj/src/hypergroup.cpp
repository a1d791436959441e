// SPDX-License-Identifier: Apache-2.0
#include "conebessel/hypergroup.hpp"

#include <cmath>

#include "conebessel/errors.hpp"
#include "conebessel/measures.hpp"
#include "conebessel/parallel.hpp"

namespace conebessel {

namespace {

constexpr double kMinAcceptance = 1e-4;
constexpr long kAcceptanceWindow = 100'000;

bool is_zero(const Mat& m) { return (m.array() == cd(0.0)).all(); }

void require_rank(const FieldParams& fp, int rank, const char* what) {
  if (rank != fp.q) throw ValidationError(std::string(what) + ": matrix rank differs from q");
}

struct WeightedSums {
  double w = 0.0;
  cd wf = 0.0;
  double ww = 0.0;
  cd wwf = 0.0;
  double wwff = 0.0;
};

}  // namespace

BallKernel::BallKernel(const FieldParams& fp, double mu) : fp_(fp), mu_(mu), exponent_(mu - fp.gamma) {
  if (fp.field == Field::H) throw ValidationError("ball sampling: quaternionic case unsupported");
  if (mu > fp.ball_bound()) {
    route_ = BallRoute::Density;
    return;
  }
  const double p = 2.0 * mu / fp.d;
  if (std::abs(p - std::round(p)) < 1e-12 && std::round(p) >= fp.q) {
    route_ = BallRoute::HaarBlock;
    p_ = static_cast<int>(std::lround(p));
    return;
  }
  throw DomainError("convolution needs mu > d(q-1/2) or mu = pd/2 with integer p >= q; the ball density is not "
                    "integrable at mu = " + std::to_string(mu));
}

long BallKernel::draw(RngStream& rng, Mat& w, double& weight) const {
  if (route_ == BallRoute::HaarBlock) {
    thread_local Mat frame;
    haar_frame(p_, fp_.q, fp_.field, rng, frame);
    w = frame.topRows(fp_.q);
    weight = 1.0;
    return 1;
  }
  const long n = uniform_ball(fp_, rng, w);
  weight = exponent_ == 0.0 ? 1.0 : std::pow(ball_defect(w), exponent_);
  return n;
}

double ball_defect(const Mat& w) {
  const Mat g = Mat::Identity(w.cols(), w.cols()) - w.adjoint() * w;
  switch (g.rows()) {
    case 1: return g(0, 0).real();
    case 2: return (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real();
    default: return g.determinant().real();
  }
}

long uniform_ball(const FieldParams& fp, RngStream& rng, Mat& w) {
  const int q = fp.q;
  w.resize(q, q);
  for (long n = 1;; ++n) {
    for (Eigen::Index j = 0; j < q; ++j)
      for (Eigen::Index i = 0; i < q; ++i) {
        const double re = rng.uniform(-1.0, 1.0);
        w(i, j) = fp.field == Field::C ? cd(re, rng.uniform(-1.0, 1.0)) : cd(re);
      }
    bool inside;
    if (q == 1) {
      inside = std::norm(w(0, 0)) < 1.0;
    } else if (q == 2) {
      const Mat g = Mat::Identity(2, 2) - w.adjoint() * w;
      inside = g(0, 0).real() > 0.0 && (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real() > 0.0;
    } else {
      const Mat g = w.adjoint() * w;
      inside = hermitian_eigen(0.5 * (g + g.adjoint())).values.front() < 1.0;
    }
    if (inside) return n;
  }
}

BallSample sample_ball(const FieldParams& fp, double mu, std::size_t samples, RngStream& rng) {
  const BallKernel kernel(fp, mu);
  if (kernel.route() != BallRoute::Density)
    throw DomainError("sample_ball needs mu > d(q-1/2)");
  if (kernel.exponent() < 0.0)
    throw DomainError("sample_ball: density is unbounded for mu < gamma; use the self-normalized importance "
                      "sampler (convolution_expectation) instead");
  BallSample out;
  out.draws.reserve(samples);
  long proposals = 0;
  Mat w;
  while (out.draws.size() < samples) {
    proposals += uniform_ball(fp, rng, w);
    const double dens = kernel.exponent() == 0.0 ? 1.0 : std::pow(ball_defect(w), kernel.exponent());
    if (rng.uniform() < dens) out.draws.push_back(RectMatrix{w, fp.field});
    if (proposals >= kAcceptanceWindow &&
        static_cast<double>(out.draws.size()) / static_cast<double>(proposals) < kMinAcceptance)
      throw DomainError("sample_ball: acceptance rate below 1e-4; use the self-normalized importance sampler");
  }
  out.acceptance_rate = static_cast<double>(out.draws.size()) / static_cast<double>(std::max(proposals, 1L));
  return out;
}

McEstimate kappa_mu(const FieldParams& fp, double mu, std::size_t samples, std::uint64_t seed) {
  const BallKernel kernel(fp, mu);
  if (kernel.route() != BallRoute::Density) throw DomainError("kappa_mu needs mu > d(q-1/2)");
  if (samples < 100) throw ValidationError("kappa_mu needs at least 100 samples");
  const int dim = fp.d * fp.q * fp.q;
  const std::size_t chunks = chunk_count(samples);
  std::vector<double> s1(chunks), s2(chunks);
  parallel_chunks(chunks, [&](std::size_t c) {
    RngStream rng(seed, c);
    const std::size_t lo = c * kChunkSize;
    const std::size_t hi = std::min(samples, lo + kChunkSize);
    Mat w(fp.q, fp.q);
    double a = 0.0, b = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      for (Eigen::Index jj = 0; jj < fp.q; ++jj)
        for (Eigen::Index ii = 0; ii < fp.q; ++ii) {
          const double re = rng.uniform(-1.0, 1.0);
          w(ii, jj) = fp.field == Field::C ? cd(re, rng.uniform(-1.0, 1.0)) : cd(re);
        }
      const Mat g = w.adjoint() * w;
      const double top = fp.q == 1 ? g(0, 0).real() : hermitian_eigen(0.5 * (g + g.adjoint())).values.front();
      if (top >= 1.0) continue;
      const double v = std::pow(ball_defect(w), kernel.exponent());
      a += v;
      b += v * v;
    }
    s1[c] = a;
    s2[c] = b;
  });
  double a = 0.0, b = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    a += s1[c];
    b += s2[c];
  }
  const double n = static_cast<double>(samples);
  const double vol = std::ldexp(1.0, dim);
  const double mean = a / n;
  const double se_mean = std::sqrt(std::max(0.0, (b / n - mean * mean) / (n - 1.0)));
  const double integral = vol * mean;
  McEstimate est;
  est.value = 1.0 / integral;
  est.std_error = vol * se_mean / (integral * integral);
  est.samples = samples;
  return est;
}

void convolution_square(const Mat& r, const Mat& s, const Mat& w, Mat& z2) {
  const Mat rws = r * w * s;
  z2 = r * r + s * s + rws + rws.adjoint();
  z2 = 0.5 * (z2 + z2.adjoint()).eval();
}

ConvolutionSample convolve_points(const ConePoint& r, const ConePoint& s, double mu, const FieldParams& fp,
                                  std::size_t samples, std::uint64_t seed) {
  require_rank(fp, r.rank(), "convolve_points");
  require_rank(fp, s.rank(), "convolve_points");
  if (samples == 0) throw ValidationError("convolve_points needs at least one sample");
  const BallKernel kernel(fp, mu);
  ConvolutionSample out;
  out.route = kernel.route();
  if (is_zero(s.matrix()) || is_zero(r.matrix())) {
    const ConePoint& only = is_zero(s.matrix()) ? r : s;
    out.points.assign(samples, only);
    out.weights.assign(samples, 1.0 / static_cast<double>(samples));
    return out;
  }
  out.points.reserve(samples);
  out.weights.reserve(samples);
  const std::size_t chunks = chunk_count(samples);
  double total = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    RngStream rng(seed, c);
    const std::size_t lo = c * kChunkSize;
    const std::size_t hi = std::min(samples, lo + kChunkSize);
    Mat w, z2;
    for (std::size_t i = lo; i < hi; ++i) {
      double weight = 1.0;
      kernel.draw(rng, w, weight);
      convolution_square(r.matrix(), s.matrix(), w, z2);
      Mat z = psd_sqrt_unchecked(z2);
      if (fp.field == Field::R) z = z.real().cast<cd>();
      out.points.push_back(ConePoint::trusted(std::move(z), fp.field));
      out.weights.push_back(weight);
      total += weight;
    }
  }
  for (double& w : out.weights) w /= total;
  return out;
}

McEstimate convolution_expectation(const ConePoint& r, const ConePoint& s, double mu, const FieldParams& fp,
                                   std::size_t samples, std::uint64_t seed, const std::function<cd(const Mat&)>& f) {
  require_rank(fp, r.rank(), "convolution_expectation");
  require_rank(fp, s.rank(), "convolution_expectation");
  if (samples < 2) throw ValidationError("convolution_expectation needs at least two samples");
  const BallKernel kernel(fp, mu);
  const std::size_t chunks = chunk_count(samples);
  std::vector<WeightedSums> parts(chunks);
  parallel_chunks(chunks, [&](std::size_t c) {
    RngStream rng(seed, c);
    const std::size_t lo = c * kChunkSize;
    const std::size_t hi = std::min(samples, lo + kChunkSize);
    Mat w, z2;
    WeightedSums acc;
    for (std::size_t i = lo; i < hi; ++i) {
      double weight = 1.0;
      kernel.draw(rng, w, weight);
      convolution_square(r.matrix(), s.matrix(), w, z2);
      const cd v = f(z2);
      acc.w += weight;
      acc.wf += weight * v;
      acc.ww += weight * weight;
      acc.wwf += weight * weight * v;
      acc.wwff += weight * weight * std::norm(v);
    }
    parts[c] = acc;
  });
  WeightedSums t;
  for (const WeightedSums& p : parts) {
    t.w += p.w;
    t.wf += p.wf;
    t.ww += p.ww;
    t.wwf += p.wwf;
    t.wwff += p.wwff;
  }
  if (!(t.w > 0.0)) throw DomainError("convolution_expectation: all importance weights vanished");
  McEstimate est;
  est.value = t.wf / t.w;
  const double spread = t.wwff - 2.0 * std::real(std::conj(est.value) * t.wwf) + std::norm(est.value) * t.ww;
  est.std_error = std::sqrt(std::max(0.0, spread)) / t.w;
  est.samples = samples;
  return est;
}

VerificationReport verify_product_formula(double mu, const ConePoint& r, const ConePoint& s, const FieldParams& fp,
                                          std::size_t samples, std::uint64_t seed, double tol,
                                          const SeriesControl& ctrl) {
  VerificationReport rep;
  rep.identity = "product-formula";
  rep.seed = seed;
  {
    ReportTimer timer(rep);
    const BesselSeries j(mu, fp.q, fp.alpha, ctrl);
    auto eval = [&](const Mat& x) {
      const SeriesValue v = j.at_matrix(x);
      if (!v.converged) throw DomainError("product formula: Bessel series did not converge");
      return v.value;
    };
    rep.lhs = eval(r.matrix() * r.matrix()) * eval(s.matrix() * s.matrix());
    const McEstimate mc = convolution_expectation(r, s, mu, fp, samples, seed, eval);
    rep.rhs = mc.value;
    rep.mc_stderr = mc.std_error;
    rep.sigma_bound = 4.0;
    rep.tolerance = tol;
    const BallKernel kernel(fp, mu);
    rep.params = {{"mu", mu},          {"q", fp.q},          {"field", to_string(fp.field)},
                  {"r", matrix_json(r.matrix())}, {"s", matrix_json(s.matrix())}, {"samples", samples}};
    rep.extra["route"] = kernel.route() == BallRoute::Density ? "ball-density" : "haar-block";
    if (kernel.route() == BallRoute::HaarBlock) rep.extra["haar_rank"] = kernel.haar_rank();
  }
  rep.finalize();
  return rep;
}

VerificationReport verify_multiplicativity(const HermMatrix& s, const ConePoint& r, const ConePoint& t, double mu,
                                           const FieldParams& fp, std::size_t samples, std::uint64_t seed, double tol,
                                           const SeriesControl& ctrl) {
  require_rank(fp, s.rank(), "verify_multiplicativity");
  VerificationReport rep;
  rep.identity = "multiplicativity";
  rep.seed = seed;
  {
    ReportTimer timer(rep);
    const BesselSeries j(mu, fp.q, fp.alpha, ctrl);
    auto f_of_z = [&](const Mat& z) {
      Mat arg = 0.25 * z * s.matrix() * z;
      arg = 0.5 * (arg + arg.adjoint()).eval();
      const SeriesValue v = j.at_matrix(arg);
      if (!v.converged) throw DomainError("multiplicativity: Bessel series did not converge");
      return v.value;
    };
    rep.lhs = f_of_z(r.matrix()) * f_of_z(t.matrix());
    const McEstimate mc = convolution_expectation(r, t, mu, fp, samples, seed,
                                                  [&](const Mat& z2) { return f_of_z(psd_sqrt_unchecked(z2)); });
    rep.rhs = mc.value;
    rep.mc_stderr = mc.std_error;
    rep.sigma_bound = 4.0;
    rep.tolerance = tol;
    const BallKernel kernel(fp, mu);
    rep.params = {{"mu", mu},
                  {"q", fp.q},
                  {"field", to_string(fp.field)},
                  {"s", matrix_json(s.matrix())},
                  {"r", matrix_json(r.matrix())},
                  {"t", matrix_json(t.matrix())},
                  {"samples", samples}};
    rep.extra["route"] = kernel.route() == BallRoute::Density ? "ball-density" : "haar-block";
  }
  rep.finalize();
  return rep;
}

}  // namespace conebessel
