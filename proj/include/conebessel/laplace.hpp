// SPDX-License-Identifier: Apache-2.0
//
// Laplace transform of J_mu on Pi_q, the addition theorem, Sonine
// representations and the beta mixing measures, checked by cone
// quadrature (q <= 2):
//
//   int J_mu(xm) e^{-<x,y>} Delta(x)^(mu-n/q) dx = Gamma_Omega(mu) Delta(y)^-mu e^{-tr(m y^-1)}
//   J_{mu+nu}(m) = B_Omega(mu,nu)^-1 int_{Pi^I} J_mu(ym) Delta(y)^(mu-n/q) Delta(I-y)^(nu-n/q) dy
//   phi_s^{mu+nu}(x) = int_{Pi^I} phi_{sqrt(sys)}^mu(x) dbeta_{q;mu,nu}(y)
//   phi_l^{pd/2}(x) = int_{Pi_pt^I} phi_{l(r)}^{pt d/2}(x) dbeta_{pt; pt d/2, (p-pt)d/2}(r),
//       l(r)^2 = l r_11 l with r_11 the upper-left q x q block of r.
#pragma once

#include <optional>
#include <vector>

#include "conebessel/field.hpp"
#include "conebessel/quadrature.hpp"
#include "conebessel/report.hpp"
#include "conebessel/series.hpp"

namespace conebessel {

/// Default relative tolerance for a quadrature identity at rank q:
/// "laplace", "addition", "sonine", "sonine-phi", "polar-route".
double quad_tolerance(const std::string& identity, int q);

/// Series control sized for arguments with eigenvalues up to max_arg.
SeriesControl quadrature_series_control(double max_arg);

VerificationReport verify_laplace(double mu, const ConePoint& y, const FieldParams& fp, QuadSpec spec = {},
                                  std::optional<double> tol = {});
VerificationReport verify_laplace_mod(double mu, const ConePoint& m, const ConePoint& y, const FieldParams& fp,
                                      QuadSpec spec = {}, std::optional<double> tol = {});

/// Inner integral over {0 <= y <= x} through y = sqrt(x) t sqrt(x),
/// dy = Delta(x)^(n/q) dt with t in Pi_q^I. Needs x positive definite.
VerificationReport verify_addition(double mu, double nu, const ConePoint& m1, const ConePoint& m2,
                                   const ConePoint& x, const FieldParams& fp, QuadSpec spec = {},
                                   std::optional<double> tol = {});

VerificationReport sonine_eval(double mu, double nu, const ConePoint& m, const FieldParams& fp, QuadSpec spec = {},
                               std::optional<double> tol = {});

struct MixingAtom {
  Mat point;  // sqrt(s y s)
  double weight = 0.0;
};

/// Discretized beta mixing measure: atoms sqrt(s y_i s) with weights
/// beta_{q;mu,nu} density times quadrature weight.
std::vector<MixingAtom> mixing_measure(double mu, double nu, const ConePoint& s, const FieldParams& fp, int level);

/// With emit_measure the atoms go into extra["mixing_measure"].
VerificationReport sonine_phi(double mu, double nu, const ConePoint& s, const ConePoint& x, const FieldParams& fp,
                              QuadSpec spec = {}, std::optional<double> tol = {}, bool emit_measure = false);

enum class PolarMethod { Quadrature, MonteCarlo };

struct PolarOptions {
  PolarMethod method = PolarMethod::Quadrature;
  QuadSpec quad{};
  std::size_t samples = 200'000;
  std::uint64_t seed = 0;
};

/// phi_l^{pd/2}(x) by the series against the beta_{pt}-average of
/// phi_{l(r)}^{pt d/2}(x); q <= pt, p >= 2 pt, and pt <= 2 for quadrature.
VerificationReport verify_polar_route(int ptilde, int p, const ConePoint& lambda, const ConePoint& x,
                                      const FieldParams& fp, const PolarOptions& opts = {},
                                      std::optional<double> tol = {});

/// Sonine-phi quadrature at (mu, nu) = (pt d/2, (p - pt)d/2) against the
/// Monte Carlo polar route.
VerificationReport verify_route_consistency(int ptilde, int p, const ConePoint& lambda, const ConePoint& x,
                                            const FieldParams& fp, std::size_t samples, std::uint64_t seed,
                                            double tol = 1e-2);

/// KS test of the (1,1) entry of beta_{pt; pd/2, rd/2} draws (Cholesky
/// construction) against the scalar Beta(pd/2, rd/2) law. Runs seeds
/// seed, seed+1, seed+2; passes when at least two p-values exceed level.
VerificationReport verify_beta_projection(int ptilde, int q, Field field, int p, int r, std::size_t samples,
                                          std::uint64_t seed, double level = 0.01);

}  // namespace conebessel
