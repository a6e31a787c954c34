// SPDX-License-Identifier: Apache-2.0
// Exact point-line incidence counts, k-rich point extraction, and the full
// finite-field census. The census enumerates every canonical line of F_p^n,
// walks the p points of each, and tallies per-point degrees, so the two
// double-counting sums are obtained independently and must agree.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "jointwork/decimal.hpp"
#include "jointwork/geometry.hpp"

namespace jw {

struct IncidenceReport {
  std::size_t P = 0;
  std::size_t L = 0;
  mpz_class I;
  Dec st_rhs;  // P^(2/3) L^(2/3) + P + L, 20 digits
  Dec ratio;   // I / st_rhs, 20 digits; 0 when both counts are 0
};

// Exact number of pairs (p, l) with p on l. Duplicate list entries count
// again. Throws when nonempty lists disagree on field or dimension.
mpz_class count_incidences(const std::vector<Point>& points, const std::vector<Line>& lines,
                           unsigned threads = 0);

IncidenceReport incidence_report(const std::vector<Point>& points,
                                 const std::vector<Line>& lines, unsigned threads = 0);

// Points lying on at least k lines, weights included, in canonical point
// order. Requires k >= 2.
std::vector<Point> rich_points(const Arrangement& arr, std::uint64_t k, unsigned threads = 0);

inline constexpr std::uint64_t kCensusPointCap = 10000000;

// Census of all points and all lines of F_p^n. Requires p prime, n >= 2,
// p^n within the cap. Cross-checks the line count against the closed form
// when n = 2 and the uniform per-point degree (p^n - 1)/(p - 1) always.
IncidenceReport ff_full_census(std::uint64_t p, unsigned n, unsigned threads = 0);

}  // namespace jw
