// SPDX-License-Identifier: Apache-2.0
// Minimal deterministic work sharding. The chunk decomposition depends only
// on the workload size, never on the thread count, and per-chunk results are
// merged in chunk order, so any --threads value produces identical output.

#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace jw {

inline unsigned default_threads() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

// Runs fn(chunk_index, begin, end) over [0, count) split into fixed-size
// chunks. fn must write only into its own chunk slot.
inline void parallel_chunks(std::size_t count, unsigned threads,
                            std::size_t chunk_hint,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (count == 0) return;
  if (threads == 0) threads = default_threads();
  std::size_t chunk = chunk_hint == 0 ? 1 : chunk_hint;
  const std::size_t nchunks = (count + chunk - 1) / chunk;
  if (threads == 1 || nchunks == 1) {
    for (std::size_t c = 0; c < nchunks; ++c) {
      fn(c, c * chunk, std::min(count, (c + 1) * chunk));
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      fn(c, c * chunk, std::min(count, (c + 1) * chunk));
    }
  };
  std::vector<std::thread> pool;
  const unsigned nthreads = static_cast<unsigned>(std::min<std::size_t>(threads, nchunks));
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

// Like parallel_chunks, but collects one result per chunk, in chunk order.
template <typename R>
std::vector<R> parallel_map_chunks(
    std::size_t count, unsigned threads, std::size_t chunk_hint,
    const std::function<R(std::size_t, std::size_t, std::size_t)>& fn) {
  if (count == 0) return {};
  const std::size_t chunk = chunk_hint == 0 ? 1 : chunk_hint;
  const std::size_t nchunks = (count + chunk - 1) / chunk;
  std::vector<R> results(nchunks);
  parallel_chunks(count, threads, chunk,
                  [&](std::size_t c, std::size_t begin, std::size_t end) {
                    results[c] = fn(c, begin, end);
                  });
  return results;
}

}  // namespace jw
