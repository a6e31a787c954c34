// SPDX-License-Identifier: Apache-2.0

#include "jointwork/incidence.hpp"

#include <atomic>
#include <stdexcept>

#include "jointwork/errors.hpp"
#include "jointwork/parallel.hpp"

namespace jw {

namespace {

IncidenceReport make_report(std::size_t P, std::size_t L, mpz_class I) {
  IncidenceReport rep;
  rep.P = P;
  rep.L = L;
  rep.I = std::move(I);
  mpz_class pl = mpz_class(static_cast<unsigned long>(P)) * static_cast<unsigned long>(L);
  rep.st_rhs = Dec::root_ratio(pl * pl, 1, 3, 20) +
               Dec::from_int(mpz_class(static_cast<unsigned long>(P + L)), 20);
  rep.ratio = rep.st_rhs.units == 0 ? Dec::from_int(0, 20)
                                    : Dec::ratio(rep.I * Dec::pow10(20), rep.st_rhs.units, 20);
  return rep;
}

}  // namespace

mpz_class count_incidences(const std::vector<Point>& points, const std::vector<Line>& lines,
                           unsigned threads) {
  if (points.empty() || lines.empty()) return 0;
  const unsigned dim = points[0].dim();
  const FieldDescriptor field = points[0].c.at(0).field();
  for (const Point& p : points)
    if (p.dim() != dim || p.c[0].field() != field)
      throw std::invalid_argument("count_incidences: mixed point dimensions or fields");
  for (const Line& l : lines)
    if (l.dim() != dim || l.dir.c[0].field() != field)
      throw std::invalid_argument("count_incidences: lines disagree with the points");

  auto partial = parallel_map_chunks<std::uint64_t>(
      points.size(), threads, 64, [&](std::size_t, std::size_t begin, std::size_t end) {
        std::uint64_t count = 0;
        for (std::size_t i = begin; i < end; ++i)
          for (const Line& l : lines)
            if (point_on_line(points[i], l)) ++count;
        return count;
      });
  mpz_class total = 0;
  for (std::uint64_t c : partial) total += static_cast<unsigned long>(c);
  return total;
}

IncidenceReport incidence_report(const std::vector<Point>& points,
                                 const std::vector<Line>& lines, unsigned threads) {
  return make_report(points.size(), lines.size(), count_incidences(points, lines, threads));
}

std::vector<Point> rich_points(const Arrangement& arr, std::uint64_t k, unsigned threads) {
  if (k < 2) throw std::invalid_argument("rich_points: k must be at least 2");
  std::vector<Point> out;
  for (const auto& [point, ids] : concurrency_map(arr, threads)) {
    std::uint64_t incident = 0;
    for (std::size_t id : ids) incident += arr.weight(id);
    if (incident >= k) out.push_back(point);
  }
  return out;
}

IncidenceReport ff_full_census(std::uint64_t p, unsigned n, unsigned threads) {
  if (n < 2) throw std::invalid_argument("ff_full_census: dimension must be at least 2");
  FieldDescriptor::fp(p);  // validates primality
  mpz_class cube;
  mpz_ui_pow_ui(cube.get_mpz_t(), p, n);
  if (cube > static_cast<unsigned long>(kCensusPointCap))
    throw CapExceeded("ff_full_census: p^n exceeds the cap (got " + cube.get_str() + ")");
  const std::size_t P = static_cast<std::size_t>(cube.get_ui());

  // Canonical directions: leading coordinate 1 at the pivot, zeros before.
  std::vector<std::vector<std::uint64_t>> dirs;
  for (unsigned pivot = 0; pivot < n; ++pivot) {
    const unsigned free = n - 1 - pivot;
    std::uint64_t variants = 1;
    for (unsigned j = 0; j < free; ++j) variants *= p;
    for (std::uint64_t v = 0; v < variants; ++v) {
      std::vector<std::uint64_t> d(n, 0);
      d[pivot] = 1;
      std::uint64_t rest = v;
      for (unsigned j = pivot + 1; j < n; ++j) {
        d[j] = rest % p;
        rest /= p;
      }
      dirs.push_back(std::move(d));
    }
  }

  std::uint64_t bases = 1;
  for (unsigned j = 0; j + 1 < n; ++j) bases *= p;
  const std::uint64_t L64 = dirs.size() * bases;
  if (n == 2 && L64 != p * p + p)
    throw InvariantViolation("ff_full_census: line count misses the closed form");

  // Per-point line degrees; increments commute, so sharding by direction
  // class keeps the result deterministic.
  std::vector<std::atomic<std::uint32_t>> tally(P);
  std::atomic<std::uint64_t> walked{0};
  parallel_chunks(dirs.size(), threads, 4, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<std::uint64_t> coords(n);
    std::uint64_t local = 0;
    for (std::size_t di = begin; di < end; ++di) {
      const auto& d = dirs[di];
      unsigned pivot = 0;
      while (d[pivot] == 0) ++pivot;
      for (std::uint64_t b = 0; b < bases; ++b) {
        // base point: coordinate 0 at the pivot, the rest from b
        std::uint64_t rest = b;
        for (unsigned j = 0; j < n; ++j) {
          if (j == pivot) {
            coords[j] = 0;
          } else {
            coords[j] = rest % p;
            rest /= p;
          }
        }
        for (std::uint64_t t = 0; t < p; ++t) {
          std::size_t idx = 0;
          for (unsigned j = n; j-- > 0;) idx = idx * p + coords[j];
          tally[idx].fetch_add(1, std::memory_order_relaxed);
          ++local;
          for (unsigned j = 0; j < n; ++j) {
            coords[j] += d[j];
            if (coords[j] >= p) coords[j] -= p;
          }
        }
      }
    }
    walked.fetch_add(local, std::memory_order_relaxed);
  });

  const std::uint64_t expected_degree = (cube.get_ui() - 1) / (p - 1);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < P; ++i) {
    const std::uint32_t deg = tally[i].load(std::memory_order_relaxed);
    if (deg != expected_degree)
      throw InvariantViolation("ff_full_census: point degrees are not uniform");
    sum += deg;
  }
  if (sum != walked.load() || sum != L64 * p)
    throw InvariantViolation("ff_full_census: the two incidence sums disagree");

  return make_report(P, static_cast<std::size_t>(L64),
                     mpz_class(static_cast<unsigned long>(sum)));
}

}  // namespace jw
