// SPDX-License-Identifier: Apache-2.0
//
// Counter-based random streams. Every draw is a pure function of
// (seed, stream, counter), so results do not depend on thread scheduling
// or on the standard library's distribution implementations.
#pragma once

#include <array>
#include <cstdint>

namespace conebessel {

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Uniform on (lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Gamma(shape, 1), shape > 0 (Marsaglia-Tsang).
  double gamma(double shape);
  /// Beta(a, b) via two gamma draws.
  double beta(double a, double b);
  /// Fair sign, +1 or -1.
  double sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int avail_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace conebessel
