// SPDX-License-Identifier: Apache-2.0
// Deterministic randomness. The generator is std::mt19937_64, whose output
// sequence is fixed by the language standard, so arrangements and Monte
// Carlo runs are byte-reproducible across platforms. Range reduction uses
// rejection sampling on raw 64-bit draws instead of
// std::uniform_int_distribution, which is not portable across standard
// library implementations. Worker streams derive from the master seed with
// splitmix64 so parallel reductions stay deterministic.

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace jw {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

  // Derived stream for worker `index`; distinct from the parent stream.
  Rng stream(std::uint64_t index) const {
    return Rng(splitmix64(seed_ ^ splitmix64(index + 0x51ed2701ull)));
  }

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, bound). Rejection keeps the distribution exact.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    std::uint64_t v = gen_();
    while (v > limit) v = gen_();
    return v % bound;
  }

  std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive ends
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double unit() {  // [0,1) with 53 random bits
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // First k entries of a uniformly random permutation of {0,...,n-1}.
  std::vector<std::uint32_t> sample(std::uint32_t k, std::uint32_t n) {
    std::vector<std::uint32_t> idx(n);
    for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
    for (std::uint32_t i = 0; i < k && i + 1 < n; ++i) {
      const auto j = i + static_cast<std::uint32_t>(below(n - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
  }

private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace jw
