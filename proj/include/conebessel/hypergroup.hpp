// SPDX-License-Identifier: Apache-2.0
//
// Hypergroup convolution on Pi_q:
//
//   (delta_r *_mu delta_s)(f) = kappa_mu int_{B_q} f(sqrt(r^2 + s^2 + r w s + s w^* r))
//                                   Delta(I - w^* w)^(mu - gamma) dw,
//
// for mu > d(q - 1/2). At and below that bound the ball density is not
// integrable; when mu = pd/2 for an integer p >= q the same convolution is
// realized by taking w as the upper-left q x q block of a Haar element of
// U_p(F).
#pragma once

#include <functional>
#include <vector>

#include "conebessel/field.hpp"
#include "conebessel/report.hpp"
#include "conebessel/rng.hpp"
#include "conebessel/series.hpp"

namespace conebessel {

enum class BallRoute { Density, HaarBlock };

/// Source of ball elements w for the convolution at index mu.
class BallKernel {
 public:
  BallKernel(const FieldParams& fp, double mu);

  BallRoute route() const noexcept { return route_; }
  /// Exponent mu - gamma of the ball density.
  double exponent() const noexcept { return exponent_; }
  /// p with mu = pd/2 for the Haar-block route.
  int haar_rank() const noexcept { return p_; }

  /// One proposal: a uniform ball element with importance weight
  /// Delta(I - w^* w)^(mu - gamma) (density route), or a Haar block with
  /// weight 1. Returns the number of cube proposals consumed.
  long draw(RngStream& rng, Mat& w, double& weight) const;

 private:
  FieldParams fp_;
  double mu_;
  double exponent_;
  BallRoute route_;
  int p_ = 0;
};

/// Uniform proposal inside the open ball {w in M_q(F): ||w||_op < 1}
/// by rejection from the cube; returns the number of cube draws.
long uniform_ball(const FieldParams& fp, RngStream& rng, Mat& w);
/// det(I - w^* w).
double ball_defect(const Mat& w);

struct BallSample {
  std::vector<RectMatrix> draws;
  double acceptance_rate = 0.0;
};

/// Exact draws with density proportional to Delta(I - w^* w)^(mu - gamma),
/// by rejection from the uniform ball. Needs mu >= gamma (bounded density);
/// aborts when the acceptance rate falls below 1e-4.
BallSample sample_ball(const FieldParams& fp, double mu, std::size_t samples, RngStream& rng);

/// Monte Carlo estimate of kappa_mu = (int_{B_q} Delta(I - w^* w)^(mu - gamma) dw)^(-1).
McEstimate kappa_mu(const FieldParams& fp, double mu, std::size_t samples, std::uint64_t seed);

/// Weighted draws representing delta_r *_mu delta_s.
struct ConvolutionSample {
  std::vector<ConePoint> points;
  std::vector<double> weights;  // normalized to sum 1
  BallRoute route = BallRoute::Density;
};

ConvolutionSample convolve_points(const ConePoint& r, const ConePoint& s, double mu, const FieldParams& fp,
                                  std::size_t samples, std::uint64_t seed);

/// z^2 = r^2 + s^2 + r w s + s w^* r for one ball element.
void convolution_square(const Mat& r, const Mat& s, const Mat& w, Mat& z2);

/// Self-normalized estimate of int f d(delta_r *_mu delta_s), where f
/// receives z^2 (so that functions of z^2 need no square root). The
/// standard error uses the delta method.
McEstimate convolution_expectation(const ConePoint& r, const ConePoint& s, double mu, const FieldParams& fp,
                                   std::size_t samples, std::uint64_t seed, const std::function<cd(const Mat&)>& f);

/// J_mu(r^2) J_mu(s^2) against the convolution average of J_mu(z^2).
VerificationReport verify_product_formula(double mu, const ConePoint& r, const ConePoint& s, const FieldParams& fp,
                                          std::size_t samples, std::uint64_t seed, double tol,
                                          const SeriesControl& ctrl = {});

/// f_s(r) f_s(t) against the convolution average of f_s(z).
VerificationReport verify_multiplicativity(const HermMatrix& s, const ConePoint& r, const ConePoint& t, double mu,
                                           const FieldParams& fp, std::size_t samples, std::uint64_t seed, double tol,
                                           const SeriesControl& ctrl = {});

}  // namespace conebessel
