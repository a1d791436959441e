// SPDX-License-Identifier: Apache-2.0
//
// Samplers and normalizing constants on the cone: Haar unitaries, Gaussian
// and Wishart matrices, matrix beta laws, the multivariate Gamma function
// and a one-sample Kolmogorov-Smirnov test.
//
// Gaussian convention: real entries N(0, 1) for F = R; real and imaginary
// parts N(0, 1/2) each for F = C, so E[X^* X] = p I for X in M_{p,q}.
//
// Lebesgue measure on H_q is the Euclidean measure of the trace inner
// product <x, y> = Re tr(xy): each off-diagonal real coordinate carries a
// factor sqrt(2).
#pragma once

#include <functional>
#include <vector>

#include "conebessel/field.hpp"
#include "conebessel/rng.hpp"

namespace conebessel {

/// rows x cols Gaussian matrix over F in {R, C}.
void gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Field f, RngStream& rng, Mat& out);

/// Haar-distributed element of U_p(F): QR of a Gaussian matrix with the
/// phases fixed so that diag(R) > 0.
RectMatrix haar_unitary(int p, const FieldParams& fp, RngStream& rng);
/// First q columns of a Haar unitary in U_p(F) (same law, cheaper).
void haar_frame(int p, int q, Field f, RngStream& rng, Mat& out);

/// Gamma_Omega(mu) = (2pi)^((n-q)/2) prod_{j<q} Gamma(mu - j d/2).
cd gamma_omega(const FieldParams& fp, cd mu);
/// log Gamma_Omega for real mu > d(q-1)/2.
double log_gamma_omega(const FieldParams& fp, double mu);
/// B_Omega(mu, nu) = Gamma_Omega(mu) Gamma_Omega(nu) / Gamma_Omega(mu + nu).
double beta_const(const FieldParams& fp, double mu, double nu);

/// Complex Gamma function (Lanczos with reflection).
cd complex_gamma(cd z);

struct BetaParams {
  BetaParams(FieldParams fp, double mu, double nu);

  FieldParams fp;
  double mu;
  double nu;

  double exponent_mu() const noexcept { return mu - fp.n_over_q(); }
  double exponent_nu() const noexcept { return nu - fp.n_over_q(); }
};

/// Density of beta_{q; mu, nu} at y; zero outside 0 <= y <= I.
double beta_density(const ConePoint& y, const BetaParams& params);
/// Same, from the eigenvalues of y (length q, any order).
double beta_density_spectral(std::span<const double> eigenvalues, const BetaParams& params);

/// Cholesky construction: S = X^*X, T = Y^*Y with X in M_{p,ptilde},
/// Y in M_{r,ptilde}; S + T = C C^*; returns C^{-1} S C^{-*}. Distributed as
/// beta_{ptilde; pd/2, rd/2}.
ConePoint sample_matrix_beta(int ptilde, Field f, int p, int r, RngStream& rng);

/// Draw from beta_{q; mu, nu}: scalar sampler for q = 1, the Cholesky
/// construction when 2mu/d and 2nu/d are integers >= q, rejection from the
/// uniform law on Pi_2^I for other q = 2 parameters with mu, nu >= n/q.
ConePoint sample_beta(const BetaParams& params, RngStream& rng);

/// Upper-left q x q block.
ConePoint project_block(const ConePoint& y, int q);

/// sigma^{1/2} X^* X sigma^{1/2} with X a p x q Gaussian matrix; mean p sigma.
ConePoint wishart_sample(const FieldParams& fp, int p, const ConePoint& sigma, RngStream& rng);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// One-sample Kolmogorov-Smirnov test with the asymptotic p-value
/// (Stephens' finite-n correction). Needs >= 100 samples.
KsResult ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);
/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

}  // namespace conebessel
