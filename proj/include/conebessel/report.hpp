// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "json.hpp"

namespace conebessel {

using Json = nlohmann::ordered_json;

/// Outcome of one numerical identity check.
///
/// pass holds iff (for stochastic checks) abs_err <= sigma_bound * mc_stderr
/// plus a round-off floor, and (when a tolerance is set) rel_err <= tolerance.
struct VerificationReport {
  std::string identity;
  Json params = Json::object();
  std::complex<double> lhs{};
  std::complex<double> rhs{};
  double abs_err = 0.0;
  double rel_err = 0.0;
  std::optional<double> mc_stderr;
  double sigma_bound = 4.0;
  std::optional<double> tolerance;
  bool pass = false;
  std::uint64_t seed = 0;
  std::int64_t wall_time_ms = 0;
  std::string notes;
  Json extra = Json::object();

  /// Fills abs_err, rel_err and pass from lhs, rhs, mc_stderr, tolerance.
  void finalize();
  Json to_json(bool with_timestamp = true) const;
};

Json complex_json(std::complex<double> z);
/// Rows of numbers, or rows of {re, im} objects when any entry is complex.
Json matrix_json(const Eigen::MatrixXcd& m);

/// Measures wall time into a report on destruction of the scope.
class ReportTimer {
 public:
  explicit ReportTimer(VerificationReport& r) : r_(r), t0_(std::chrono::steady_clock::now()) {}
  ~ReportTimer() {
    r_.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0_).count();
  }
  ReportTimer(const ReportTimer&) = delete;
  ReportTimer& operator=(const ReportTimer&) = delete;

 private:
  VerificationReport& r_;
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace conebessel
