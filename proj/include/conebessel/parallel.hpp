// SPDX-License-Identifier: Apache-2.0
//
// Deterministic chunked parallelism. Work is split into fixed-size chunks;
// chunk i always uses RNG stream i and results are reduced in chunk order,
// so output is independent of the thread count.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace conebessel {

/// Worker count used by parallel loops; 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

inline constexpr std::size_t kChunkSize = 8192;

inline std::size_t chunk_count(std::size_t total, std::size_t chunk = kChunkSize) {
  return (total + chunk - 1) / chunk;
}

/// Runs body(chunk_index) for every chunk in [0, n_chunks). Exceptions from
/// workers are rethrown on the calling thread (first one wins).
template <class Body>
void parallel_chunks(std::size_t n_chunks, Body&& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n_chunks));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_chunks; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_chunks) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(n_chunks);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace conebessel
