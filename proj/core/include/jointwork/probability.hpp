// SPDX-License-Identifier: Apache-2.0
// Hypergeometric tail of the random-subcollection argument: draw A of the L
// lines uniformly and ask for at least n of the K lines through a fixed
// joint. exact_tail gives 1 - P' as an exact rational, mc_estimate samples
// the same event, witness_subcollection hunts for a small subcollection that
// keeps a dyadic bucket of joints alive, and bound_check_last reports the
// per-bucket ratios after verifying that every n-fold concurrence spans.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "jointwork/decimal.hpp"
#include "jointwork/geometry.hpp"

namespace jw {

struct TailQuery {
  std::uint64_t L = 0;  // collection size
  std::uint64_t K = 0;  // lines through the joint
  std::uint64_t A = 0;  // sample size
  unsigned n = 2;       // spanning threshold

  // 0 <= K <= L, 0 <= A <= L, n >= 2; throws invalid_argument otherwise.
  void validate() const;
};

// P(fewer than n of the K marked lines land in a uniform A-subset of the L),
// an exact rational in lowest terms. Vanishing binomials encode the boundary
// cases, so K = 0 gives 1 and A = L with K >= n gives 0.
mpq_class exact_tail(const TailQuery& q);

struct McResult {
  Dec estimate;   // observed fraction of samples capturing >= n marked lines
  Dec std_error;  // binomial standard error of the estimate
  std::uint64_t successes = 0;
  std::uint64_t samples = 0;
};

// Monte Carlo estimate of P' = 1 - exact_tail. Deterministic for a fixed
// seed and sample count: workers draw from streams derived from the master
// seed over a chunk decomposition that does not depend on the thread count.
McResult mc_estimate(const TailQuery& q, std::uint64_t samples, std::uint64_t seed,
                     unsigned threads = 0);

struct WitnessResult {
  std::vector<std::size_t> subset;    // line ids of the best draw, ascending
  std::size_t captured = 0;           // bucket joints still joints of the subset
  std::size_t bucket_size = 0;        // joints at the requested level
  std::size_t subset_size = 0;        // ceil(a_n * L / level^(1/n)), capped at L
  std::vector<std::size_t> per_try;   // capture count of every draw, in order
};

// Draws `tries` subsets of size ceil(a_n * L / level^(1/n)) and keeps the one
// whose sub-arrangement retains the most joints of the dyadic bucket at
// `level`. A size at or above L collapses to the full collection, evaluated
// once. Requires a nonempty bucket, a_n >= arr.n, tries >= 1.
WitnessResult witness_subcollection(const Arrangement& arr, const mpz_class& level,
                                    unsigned a_n, std::uint64_t seed, unsigned tries);

struct BucketBound {
  mpz_class level;          // dyadic floor shared by the bucket's multiplicities
  std::size_t joints = 0;   // bucket size
  Dec ratio;                // sum over the bucket of N^(1/(n-1)), over L^(n/(n-1))
};

inline constexpr std::size_t kGenericityPointCap = 1000;

// Per-bucket ratios for the generic lower-bound statement, 20 digits, in
// increasing level order. Refuses (invalid_argument, naming the point) when
// some n concurrent lines fail to span; the check enumerates every
// concurrency point and is capped at kGenericityPointCap of them.
std::vector<BucketBound> bound_check_last(const Arrangement& arr, unsigned n,
                                          unsigned threads = 0);

}  // namespace jw
