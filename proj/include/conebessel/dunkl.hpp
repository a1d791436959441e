// SPDX-License-Identifier: Apache-2.0
//
// Two-argument hypergeometric series and Dunkl-Bessel functions of type A
// and B:
//
//   0F0^a(x, y)      = sum C_l(x) C_l(y) / (|l|! C_l(1))
//   0F1^a(mu; x, y)  = sum C_l(x) C_l(y) / ((mu)_l |l|! C_l(1))
//   J_k^A(x, y)      = 0F0^{1/k}(x, y)
//   J_k^B(x, y)      = 0F1^{1/k2}(k1 + (q-1)k2 + 1/2; x^2/2, y^2/2)
#pragma once

#include <span>
#include <vector>

#include "conebessel/bessel.hpp"
#include "conebessel/field.hpp"
#include "conebessel/report.hpp"
#include "conebessel/series.hpp"

namespace conebessel {

/// Type-B multiplicity (k1 on +-e_i, k2 on +-e_i +- e_j).
struct MultiplicityB {
  MultiplicityB(double k1, double k2);
  /// k(mu, d) = (mu - (d(q-1)+1)/2, d/2).
  static MultiplicityB geometric(double mu, int d, int q);

  double k1;
  double k2;

  double alpha() const noexcept { return 1.0 / k2; }
  double mu(int q) const noexcept { return k1 + (q - 1) * k2 + 0.5; }
};

SeriesValue hyp0F0(std::span<const cd> xi, std::span<const cd> eta, double alpha, const SeriesControl& ctrl = {});
SeriesValue hyp0F1(cd mu, std::span<const cd> xi, std::span<const cd> eta, double alpha,
                   const SeriesControl& ctrl = {});

/// J_k^A(xi, eta), k > 0.
SeriesValue dunkl_bessel_A(double k, std::span<const cd> xi, std::span<const cd> eta, const SeriesControl& ctrl = {});
/// J_k^B(xi, eta) for complex arguments.
SeriesValue dunkl_bessel_B(const MultiplicityB& k, std::span<const cd> xi, std::span<const cd> eta,
                           const SeriesControl& ctrl = {});
/// J_k^B(xi, i eta) for real xi, eta: the square (i eta)^2 = -eta^2 is taken
/// before the series, so the evaluation is a real-argument 0F1.
SeriesValue dunkl_bessel_B_imag(const MultiplicityB& k, std::span<const double> xi, std::span<const double> eta,
                                const SeriesControl& ctrl = {});

/// Haar average of exp(tr(eta u xi u^*)) over U_q(F).
McEstimate harish_chandra_mc(const FieldParams& fp, std::span<const double> xi, std::span<const double> eta,
                             std::size_t samples, std::uint64_t seed);
/// 0F0^{2/d}(xi, eta) against harish_chandra_mc (3 standard errors).
VerificationReport verify_harish_chandra(const FieldParams& fp, std::span<const double> xi,
                                         std::span<const double> eta, std::size_t samples, std::uint64_t seed,
                                         const SeriesControl& ctrl = {});

/// Haar average of J_mu(eta u xi^2 u^* eta / 4) over U_q(F).
McEstimate dunklchar_mc(double mu, const FieldParams& fp, std::span<const double> xi, std::span<const double> eta,
                        std::size_t samples, std::uint64_t seed, const SeriesControl& ctrl = {});
/// J_{k(mu,d)}^B(xi, i eta) against dunklchar_mc (3 standard errors).
VerificationReport verify_dunklchar(double mu, const FieldParams& fp, std::span<const double> xi,
                                    std::span<const double> eta, std::size_t samples, std::uint64_t seed,
                                    const SeriesControl& ctrl = {});

/// |J_{k(mu,d)}^B(2 sqrt(mu) xi, i b) - J_{d/2}^A(xi^2, -b^2)| for each mu.
std::vector<RateRow> b_to_a_limit(const FieldParams& fp, std::span<const double> xi, std::span<const double> b,
                                  std::span<const double> mus, const SeriesControl& ctrl = {});

/// (1/2pi) int_{-pi}^{pi} cos((xi1^2 - xi2^2) cos 2t) dt by adaptive
/// Gauss-Kronrod quadrature.
double example_q2_psi(double xi1, double xi2);
/// psi_{(i,-i)}(xi) = J_{1/2}^A(xi^2, (-i, i)) by the 0F0 series.
SeriesValue example_q2_series(double xi1, double xi2, const SeriesControl& ctrl = {});
/// Quadrature, series and J_0(xi1^2 - xi2^2) on a grid of chamber points.
VerificationReport verify_example_q2(std::span<const std::pair<double, double>> grid, double tol = 1e-8);

/// psi_b(xi) psi_b(eta) against the Haar average of
/// psi_b(sigma(sqrt(xi^2 + u eta^2 u^*))), psi_b(x) = J_{d/2}^A(x^2, -b), b real.
VerificationReport verify_degenerate_product(const FieldParams& fp, std::span<const double> xi,
                                             std::span<const double> eta, std::span<const double> b,
                                             std::size_t samples, std::uint64_t seed, const SeriesControl& ctrl = {});

}  // namespace conebessel
