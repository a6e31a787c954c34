// SPDX-License-Identifier: Apache-2.0
// Constructive polynomial bisection and the iterated cell decomposition.
// Polynomials are searched however is convenient (medians, pair pivots,
// randomized lifted directions) but every returned polynomial is accepted
// only after an exact rational sign count, and the decomposition is
// re-verified cell by cell before it is returned.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "jointwork/geometry.hpp"
#include "jointwork/poly.hpp"

namespace jw {

struct PartitionPolynomial {
  std::vector<MultiPoly> factors;  // p_1 .. p_J over the rationals
  std::size_t J = 0;               // factors.size()
  unsigned total_degree = 0;       // sum of factor degrees
};

struct CellId {
  std::vector<std::int8_t> signs;  // one entry per factor, +1 or -1
  bool operator<(const CellId& o) const { return signs < o.signs; }
  bool operator==(const CellId& o) const { return signs == o.signs; }
};

struct PartitionResult {
  PartitionPolynomial poly;
  std::map<CellId, std::vector<Point>> cells;  // nonempty sign classes only
  std::vector<Point> on_zero_set;              // points with some factor zero
};

struct BisectOptions {
  std::int64_t slack = -1;  // -1: mode default, 0 for the planar pair search,
                            // ceil(|S_i|/20) per set for the lifted search
  std::uint64_t seed = 1;
  unsigned restarts = 64;   // lifted-direction budget before search_failed
  unsigned threads = 0;
};

// Pooled-point cap for the exhaustive planar pair search; larger degree-1
// planar calls go to the lifted search.
inline constexpr std::size_t kPairSearchPointCap = 240;

// A nonzero polynomial of degree <= d whose open sides {p>0} and {p<0} each
// hold at most ceil(|S_i|/2) + slack points of every set. Requires rational
// coordinates and at most C(d+n,n)-1 sets. A single set is split exactly by
// a coordinate median; d = 1 in the plane runs the pair search when the
// pooled points fit the cap, falling back to the lifted search; everything
// else is the lifted search, which throws SearchFailed when the restart
// budget runs out.
MultiPoly ham_sandwich_bisect(const std::vector<std::vector<Point>>& sets, unsigned d,
                              const BisectOptions& opt = {});

struct PartitionOptions {
  unsigned cell_constant = 4;  // C in the verified bound C * S / 2^J
  std::int64_t slack = -1;
  std::uint64_t seed = 1;
  unsigned restarts = 64;
  unsigned threads = 0;
};

// Iterated bisection: step j halves every nonempty cell with one polynomial
// whose degree is the smallest the cell count allows (steps 1 and 2 are
// hyperplanes), until the next step would overflow the degree budget d or
// the cells reach d^n. Verified before returning: coverage is exact, every
// cell holds at most C * S / 2^J points, total degree <= d, and, whenever
// points survive, 2^J >= d^n / 2^n; violations throw. Requires d > 1 and
// rational coordinates.
PartitionResult gk_partition(const std::vector<Point>& points, unsigned d,
                             const PartitionOptions& opt = {});

// Number of distinct zero-free sign vectors the line realizes against the
// partition's factors: exact univariate root isolation of each restricted
// factor, one sample per root gap. Throws invalid_argument when the line
// lies inside the zero set. Always at most total_degree + 1.
std::size_t line_cell_crossings(const Line& line, const PartitionResult& result);

}  // namespace jw
