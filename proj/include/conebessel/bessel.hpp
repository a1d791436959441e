// SPDX-License-Identifier: Apache-2.0
//
// Bessel functions on the cone Pi_q:
//
//   J_mu(x) = sum_lambda (-1)^|lambda| / ((mu)_lambda |lambda|!) Z_lambda(x),
//
// the spherical functions f_s(r) = J_mu(r s r / 4), phi_s(r) = f_{s^2}(r),
// the exponential limits psi_b(a) = exp(-tr(a^2 b)) and the Haar-integral
// representation J_{pd/2}(x^*x / 4) = E_u exp(-i Re tr((u sigma_0)^* x)).
#pragma once

#include <span>
#include <vector>

#include "conebessel/field.hpp"
#include "conebessel/report.hpp"
#include "conebessel/series.hpp"

namespace conebessel {

/// J_mu at a spectrum of length fp.q.
BesselValue bessel_J(cd mu, const Spectrum& x, const FieldParams& fp, const SeriesControl& ctrl = {});

/// f_s^mu(r) = J_mu(r s r / 4) for Hermitian s.
BesselValue f_mu(const HermMatrix& s, const ConePoint& r, cd mu, const FieldParams& fp,
                 const SeriesControl& ctrl = {});
/// Same for complexified s = a + i b (a, b Hermitian), through the complex
/// eigenvalues of r s r / 4.
BesselValue f_mu_complex(const Mat& s, const ConePoint& r, cd mu, const FieldParams& fp,
                         const SeriesControl& ctrl = {});

/// phi_s^mu(r) = f_{s^2}^mu(r).
BesselValue phi_mu(const HermMatrix& s, const ConePoint& r, cd mu, const FieldParams& fp,
                   const SeriesControl& ctrl = {});
BesselValue phi_mu_complex(const Mat& s, const ConePoint& r, cd mu, const FieldParams& fp,
                           const SeriesControl& ctrl = {});

/// psi_b(a) = exp(-tr(a^2 b)); b may be complexified.
cd olshanski_psi(const Mat& b, const ConePoint& a);

/// psi_b(a) psi_b(c) against psi_b(sqrt(a^2 + c^2)).
VerificationReport verify_psi_functional(const Mat& b, const ConePoint& a, const ConePoint& c, double tol = 1e-12);

struct RateRow {
  double mu = 0.0;
  double error = 0.0;
  double ratio = 0.0;  // error(previous mu) / error(this mu); NaN in the first row
};

/// |J_mu(mu y) - exp(-tr y)| for each mu (ascending, mu >= 2q).
std::vector<RateRow> limit_rate(const ConePoint& y, std::span<const double> mus, const FieldParams& fp,
                                const SeriesControl& ctrl = {});

/// Pass iff every successive ratio lies in [lo, hi] (which forces a strictly
/// decreasing error column when lo > 1).
VerificationReport rate_report(std::string identity, const std::vector<RateRow>& rows, double lo = 1.6,
                               double hi = 2.4);

/// Haar average of exp(-i Re tr((u sigma_0)^* x)) over U_p(F); N >= 1000.
McEstimate wolf_haar_oracle(const RectMatrix& x, const FieldParams& fp, std::size_t samples, std::uint64_t seed);

/// Compares wolf_haar_oracle with J_{pd/2}(x^*x / 4) (3 standard errors).
VerificationReport verify_wolf_haar(const RectMatrix& x, const FieldParams& fp, std::size_t samples,
                                    std::uint64_t seed, const SeriesControl& ctrl = {});

}  // namespace conebessel
