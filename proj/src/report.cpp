// SPDX-License-Identifier: Apache-2.0
#include "conebessel/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conebessel {

namespace {
// Round-off allowance so that identities which hold exactly in the samples
// (s = 0, x = 0, ...) do not fail on last-bit differences.
constexpr double kRoundoff = 64 * std::numeric_limits<double>::epsilon();

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
}  // namespace

Json complex_json(std::complex<double> z) {
  return Json{{"re", number_or_null(z.real())}, {"im", number_or_null(z.imag())}};
}

Json matrix_json(const Eigen::MatrixXcd& m) {
  const bool real = (m.imag().array() == 0.0).all();
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(real ? number_or_null(m(i, j).real()) : complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

void VerificationReport::finalize() {
  abs_err = std::abs(lhs - rhs);
  const double mag = std::abs(lhs);
  rel_err = mag > 0.0 ? abs_err / mag : abs_err;
  bool ok = std::isfinite(abs_err);
  if (mc_stderr) {
    const double floor = kRoundoff * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    ok = ok && abs_err <= sigma_bound * *mc_stderr + floor;
  }
  if (tolerance) ok = ok && rel_err <= *tolerance;
  pass = ok;
}

Json VerificationReport::to_json(bool with_timestamp) const {
  Json j;
  j["schema"] = 1;
  j["identity"] = identity;
  j["params"] = params;
  j["lhs"] = complex_json(lhs);
  j["rhs"] = complex_json(rhs);
  j["abs_err"] = number_or_null(abs_err);
  j["rel_err"] = number_or_null(rel_err);
  j["mc_stderr"] = mc_stderr ? number_or_null(*mc_stderr) : Json(nullptr);
  j["sigma_bound"] = mc_stderr ? Json(sigma_bound) : Json(nullptr);
  j["tolerance"] = tolerance ? Json(*tolerance) : Json(nullptr);
  j["pass"] = pass;
  j["seed"] = seed;
  j["wall_time_ms"] = with_timestamp ? wall_time_ms : 0;
  if (!notes.empty()) j["notes"] = notes;
  if (!extra.empty()) j["extra"] = extra;
  return j;
}

}  // namespace conebessel
