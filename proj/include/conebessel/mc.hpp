// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "conebessel/field.hpp"
#include "conebessel/parallel.hpp"
#include "conebessel/rng.hpp"

namespace conebessel {

/// Sample mean of draw(rng) over `samples` draws with its standard error.
/// Chunk c uses RngStream(seed, c); reduction is in chunk order.
template <class Draw>
McEstimate mc_mean(std::size_t samples, std::uint64_t seed, Draw&& draw) {
  const std::size_t chunks = chunk_count(samples);
  std::vector<cd> sums(chunks);
  std::vector<double> sq(chunks);
  parallel_chunks(chunks, [&](std::size_t c) {
    RngStream rng(seed, c);
    const std::size_t lo = c * kChunkSize;
    const std::size_t hi = std::min(samples, lo + kChunkSize);
    cd s = 0.0;
    double s2 = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const cd v = draw(rng);
      s += v;
      s2 += std::norm(v);
    }
    sums[c] = s;
    sq[c] = s2;
  });
  cd total = 0.0;
  double total2 = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    total += sums[c];
    total2 += sq[c];
  }
  const double n = static_cast<double>(samples);
  McEstimate est;
  est.value = total / n;
  est.std_error = n > 1 ? std::sqrt(std::max(0.0, (total2 / n - std::norm(est.value)) / (n - 1.0))) : 0.0;
  est.samples = samples;
  return est;
}

}  // namespace conebessel
