// SPDX-License-Identifier: Apache-2.0
// Joint and multijoint detection with exact multiplicities. A joint is a
// point on at least n lines whose directions span F^n; its multiplicity N
// counts the unordered spanning n-subsets of incident lines. Multijoints
// take one line from each of three collections. Weighted arrangements count
// multiset cardinalities: a line of weight w contributes w direction
// instances.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "jointwork/decimal.hpp"
#include "jointwork/geometry.hpp"

namespace jw {

struct JointRecord {
  Point point;
  std::vector<std::size_t> line_ids;  // sorted, distinct indices
  std::uint64_t K = 0;                // incident line count, weights included
  mpz_class N;                        // spanning n-subsets, weights included
};

struct MultijointRecord {
  Point point;
  std::array<std::vector<std::size_t>, 3> line_ids;  // per collection
  std::array<std::uint64_t, 3> counts = {0, 0, 0};   // N_i, weights included
  mpz_class Nprime;  // spanning cross-triples l_i from collection i
};

struct BucketKey {
  mpz_class N_floor;       // largest power of two <= N
  std::uint64_t k_floor;   // largest power of two <= K
  bool operator<(const BucketKey& o) const {
    int c = cmp(N_floor, o.N_floor);
    if (c) return c < 0;
    return k_floor < o.k_floor;
  }
  bool operator==(const BucketKey& o) const {
    return N_floor == o.N_floor && k_floor == o.k_floor;
  }
};

// Number of unordered n-subsets of dirs with full rank. Duplicate entries
// model weighted lines; subsets containing a repeat never span. Uses the
// grouped counter for large direction sets in dimension <= 3, enumeration
// otherwise.
mpz_class multiplicity(const std::vector<Direction>& dirs, unsigned n);
// Brute-force enumeration over all n-subsets, the small-instance oracle.
mpz_class multiplicity_enumerated(const std::vector<Direction>& dirs, unsigned n);

std::vector<JointRecord> find_joints(const Arrangement& arr, unsigned threads = 0);

std::map<BucketKey, std::vector<JointRecord>> bucket(const std::vector<JointRecord>& joints);

// Sum of N^(1/root) over the records, reported to `digits` decimal digits
// with the error strictly below one unit in the last digit.
Dec weighted_sum(const std::vector<JointRecord>& joints, unsigned root, int digits = 50);

// Multijoints of three collections in F^3: points on at least one line of
// each collection admitting a spanning cross-triple.
std::vector<MultijointRecord> find_multijoints(const Arrangement& a1, const Arrangement& a2,
                                               const Arrangement& a3, unsigned threads = 0);

// Sum of (N1 N2 N3)^(1/2) over all isolated coincidence points: points of
// the combined concurrency map met by at least one line of each collection,
// spanning or not. Points interior to a single shared line are not isolated
// and do not appear.
Dec coincidence_sum(const Arrangement& a1, const Arrangement& a2, const Arrangement& a3,
                    int digits = 50, unsigned threads = 0);

}  // namespace jw
