// SPDX-License-Identifier: Apache-2.0
// Polynomial bisection, cell decompositions, and line-crossing counts.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "jointwork/errors.hpp"
#include "jointwork/field.hpp"
#include "jointwork/geometry.hpp"
#include "jointwork/partition.hpp"
#include "jointwork/poly.hpp"
#include "jointwork/rng.hpp"

using namespace jw;

namespace {

const FieldDescriptor kQ = FieldDescriptor::rat();

Point pt2(long x, long y, long den = 1) {
  mpq_class qx(x, den), qy(y, den);
  qx.canonicalize();
  qy.canonicalize();
  return Point{{Scalar::from_mpq(kQ, qx), Scalar::from_mpq(kQ, qy)}};
}

std::vector<Point> random_square(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const long x = static_cast<long>(rng.below(1u << 20));
    const long y = static_cast<long>(rng.below(1u << 20));
    pts.push_back(pt2(x, y, 1 << 20));
  }
  return pts;
}

int sign_at(const MultiPoly& p, const Point& x) {
  return mpq_sgn(p.evaluate(x.c).rat_value().get_mpq_t());
}

struct Split {
  std::size_t pos = 0, neg = 0, zero = 0;
};

Split split_of(const MultiPoly& p, const std::vector<Point>& pts) {
  Split s;
  for (const Point& q : pts) {
    const int v = sign_at(p, q);
    if (v > 0) ++s.pos;
    else if (v < 0) ++s.neg;
    else ++s.zero;
  }
  return s;
}

Line line2(long bx, long by, long dx, long dy) {
  return Line{pt2(bx, by), Direction{{Scalar::from_int(kQ, dx), Scalar::from_int(kQ, dy)}}};
}

}  // namespace

TEST_CASE("single-set bisection is an exact coordinate median") {
  Rng rng(42);
  std::vector<Point> pts;
  for (int i = 0; i < 7; ++i)
    pts.push_back(pt2(static_cast<long>(rng.below(1000)), static_cast<long>(rng.below(1000))));
  MultiPoly p = ham_sandwich_bisect({pts}, 3);
  CHECK(p.degree() == 1);
  const Split s = split_of(p, pts);
  CHECK(s.pos <= 4);
  CHECK(s.neg <= 4);
  CHECK(s.pos + s.neg + s.zero == 7);

  // Centrally symmetric set: the median leaves at most half strictly anywhere.
  std::vector<Point> sym;
  for (long i = 1; i <= 5; ++i) {
    sym.push_back(pt2(i, 2 * i));
    sym.push_back(pt2(-i, -2 * i));
  }
  MultiPoly q = ham_sandwich_bisect({sym}, 1);
  const Split t = split_of(q, sym);
  CHECK(t.pos <= 5);
  CHECK(t.neg <= 5);
}

TEST_CASE("planar pair search balances two sets with zero slack") {
  std::vector<Point> a{pt2(0, 0), pt2(1, 0), pt2(0, 1), pt2(1, 1)};
  std::vector<Point> b{pt2(10, 10), pt2(11, 10), pt2(10, 11), pt2(11, 11), pt2(12, 12),
                       pt2(13, 10)};
  MultiPoly p = ham_sandwich_bisect({a, b}, 1);
  CHECK(p.degree() == 1);
  const Split sa = split_of(p, a);
  const Split sb = split_of(p, b);
  CHECK(sa.pos <= 2);
  CHECK(sa.neg <= 2);
  CHECK(sb.pos <= 3);
  CHECK(sb.neg <= 3);

  // The same set twice is consistent with any single balanced line.
  MultiPoly q = ham_sandwich_bisect({b, b}, 1);
  const Split sq = split_of(q, b);
  CHECK(sq.pos <= 3);
  CHECK(sq.neg <= 3);
}

TEST_CASE("lifted search splits several clusters at once") {
  Rng rng(5);
  auto cluster = [&](long cx, long cy) {
    std::vector<Point> pts;
    const long ys[8] = {-4, -3, -2, -1, 1, 2, 3, 4};
    for (int i = 0; i < 8; ++i)
      pts.push_back(pt2(10 * cx + static_cast<long>(rng.below(3)), 10 * cy + ys[i]));
    return pts;
  };
  const std::vector<std::vector<Point>> sets{cluster(-4, 0), cluster(0, 0), cluster(4, 0)};
  MultiPoly p = ham_sandwich_bisect(sets, 2);
  for (const auto& s : sets) {
    const Split sp = split_of(p, s);
    CHECK(sp.pos <= 5);
    CHECK(sp.neg <= 5);
  }

  SUBCASE("set count beyond the monomial budget is refused") {
    const std::vector<std::vector<Point>> six(6, sets[0]);
    CHECK_THROWS_AS(ham_sandwich_bisect(six, 2), std::invalid_argument);
  }
  SUBCASE("degree zero is refused") {
    CHECK_THROWS_AS(ham_sandwich_bisect(sets, 0), std::invalid_argument);
  }
  SUBCASE("mixed dimensions are refused") {
    std::vector<Point> bad{Point{{Scalar::one(kQ)}}};
    CHECK_THROWS_AS(ham_sandwich_bisect({sets[0], bad}, 2), std::invalid_argument);
  }
  SUBCASE("prime-field points are refused") {
    const FieldDescriptor f5 = FieldDescriptor::fp(5);
    std::vector<Point> bad{Point{{Scalar::one(f5), Scalar::one(f5)}}};
    CHECK_THROWS_AS(ham_sandwich_bisect({bad}, 1), std::invalid_argument);
  }
}

TEST_CASE("partition of a random cloud meets its budgets") {
  const std::vector<Point> pts = random_square(600, 9001);
  const PartitionResult res = gk_partition(pts, 8);
  CHECK(res.poly.J == 4);
  CHECK(res.poly.factors.size() == 4);
  CHECK(res.poly.total_degree <= 8);

  // Coverage: every input point lands in exactly one bucket.
  std::size_t covered = res.on_zero_set.size();
  std::size_t max_cell = 0;
  for (const auto& [id, cell] : res.cells) {
    REQUIRE(id.signs.size() == res.poly.J);
    covered += cell.size();
    max_cell = std::max(max_cell, cell.size());
    for (const Point& q : cell)
      for (std::size_t k = 0; k < res.poly.factors.size(); ++k)
        CHECK(sign_at(res.poly.factors[k], q) == id.signs[k]);
  }
  CHECK(covered == pts.size());
  CHECK(max_cell * (std::size_t{1} << res.poly.J) <= 4 * pts.size());
  for (const Point& q : res.on_zero_set) {
    bool vanishes = false;
    for (const auto& factor : res.poly.factors)
      if (sign_at(factor, q) == 0) vanishes = true;
    CHECK(vanishes);
  }

  SUBCASE("runs are reproducible and thread-count independent") {
    const PartitionResult again = gk_partition(pts, 8);
    REQUIRE(again.poly.factors.size() == res.poly.factors.size());
    for (std::size_t k = 0; k < res.poly.factors.size(); ++k)
      CHECK(again.poly.factors[k] == res.poly.factors[k]);
    PartitionOptions po;
    po.threads = 4;
    const PartitionResult wide = gk_partition(pts, 8, po);
    REQUIRE(wide.poly.factors.size() == res.poly.factors.size());
    for (std::size_t k = 0; k < res.poly.factors.size(); ++k)
      CHECK(wide.poly.factors[k] == res.poly.factors[k]);
    CHECK(wide.on_zero_set.size() == res.on_zero_set.size());
  }
}

TEST_CASE("partition degenerate inputs") {
  SUBCASE("collinear points are carried by the zero set") {
    std::vector<Point> diag;
    for (long i = 0; i < 9; ++i) diag.push_back(pt2(i, i));
    const PartitionResult res = gk_partition(diag, 2);
    std::size_t covered = res.on_zero_set.size();
    for (const auto& [id, cell] : res.cells) covered += cell.size();
    CHECK(covered == diag.size());
  }
  SUBCASE("points sharing one first coordinate all vanish at step one") {
    std::vector<Point> col;
    for (long i = 0; i < 6; ++i) col.push_back(pt2(3, i));
    const PartitionResult res = gk_partition(col, 4);
    CHECK(res.poly.J == 1);
    CHECK(res.cells.empty());
    CHECK(res.on_zero_set.size() == 6);
  }
  SUBCASE("a single point is swallowed by the first hyperplane") {
    const PartitionResult res = gk_partition({pt2(5, 7)}, 8);
    CHECK(res.cells.empty());
    CHECK(res.on_zero_set.size() == 1);
  }
  SUBCASE("no points yields an empty result") {
    const PartitionResult res = gk_partition({}, 8);
    CHECK(res.poly.factors.empty());
    CHECK(res.cells.empty());
    CHECK(res.on_zero_set.empty());
  }
  SUBCASE("infeasible degree budgets are rejected after the run") {
    const std::vector<Point> pts = random_square(200, 77);
    CHECK_THROWS_AS(gk_partition(pts, 6), BoundViolation);
    CHECK_THROWS_AS(gk_partition(pts, 9), BoundViolation);
  }
  SUBCASE("degree one is refused") {
    CHECK_THROWS_AS(gk_partition({pt2(0, 0)}, 1), std::invalid_argument);
  }
}

TEST_CASE("line crossing counts") {
  auto poly = [&](unsigned n, const std::string& text) { return MultiPoly::parse(kQ, n, text); };
  auto result_with = [&](std::vector<MultiPoly> factors) {
    PartitionResult r;
    unsigned total = 0;
    for (const auto& f : factors) total += static_cast<unsigned>(f.degree());
    r.poly.J = factors.size();
    r.poly.total_degree = total;
    r.poly.factors = std::move(factors);
    return r;
  };

  SUBCASE("single line factor") {
    const PartitionResult r = result_with({poly(2, "x")});
    CHECK(line_cell_crossings(line2(0, 0, 1, 1), r) == 2);   // transversal
    CHECK(line_cell_crossings(line2(1, 0, 0, 1), r) == 1);   // parallel, off the zero set
    CHECK_THROWS_AS(line_cell_crossings(line2(0, 0, 0, 1), r), std::invalid_argument);
  }
  SUBCASE("four concurrent-free lines give five cells on a transversal") {
    const PartitionResult r = result_with({poly(2, "x"), poly(2, "x + -7"),
                                           poly(2, "x + -19"), poly(2, "x + -40")});
    CHECK(line_cell_crossings(line2(0, 1, 1, 0), r) == 5);
    // Through a vertex: two factors flip at once, one pattern coalesces.
    const PartitionResult v = result_with({poly(2, "x"), poly(2, "y")});
    CHECK(line_cell_crossings(line2(0, 0, 1, 1), v) == 2);
    CHECK(line_cell_crossings(line2(0, 1, 1, 1), v) == 3);
  }
  SUBCASE("circle against secant and tangent lines") {
    const PartitionResult r = result_with({poly(2, "x^2 + y^2 + -25")});
    CHECK(line_cell_crossings(line2(0, 0, 1, 0), r) == 2);   // secant
    CHECK(line_cell_crossings(line2(0, 5, 1, 0), r) == 1);   // tangent, sign never flips
    CHECK(line_cell_crossings(line2(0, 9, 1, 0), r) == 1);   // disjoint
  }
  SUBCASE("no factors means one cell") {
    const PartitionResult r = result_with({});
    CHECK(line_cell_crossings(line2(2, 3, 1, 4), r) == 1);
  }
  SUBCASE("random lines respect the degree bound against a real partition") {
    const std::vector<Point> pts = random_square(600, 9001);
    const PartitionResult res = gk_partition(pts, 8);
    Rng rng(314);
    for (int i = 0; i < 100; ++i) {
      const long bx = static_cast<long>(rng.below(2000)) - 1000;
      const long by = static_cast<long>(rng.below(2000)) - 1000;
      long dx = 0, dy = 0;
      while (dx == 0 && dy == 0) {
        dx = static_cast<long>(rng.below(41)) - 20;
        dy = static_cast<long>(rng.below(41)) - 20;
      }
      const std::size_t crossings = line_cell_crossings(line2(bx, by, dx, dy), res);
      CHECK(crossings >= 1);
      CHECK(crossings <= res.poly.total_degree + 1);
    }
  }
}
