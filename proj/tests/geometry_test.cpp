// SPDX-License-Identifier: Apache-2.0

#include "jointwork/geometry.hpp"

#include <set>
#include <vector>

#include "doctest.h"
#include "jointwork/errors.hpp"
#include "jointwork/rng.hpp"

using namespace jw;

namespace {

const FieldDescriptor Q = FieldDescriptor::rat();

Scalar qs(long long v) { return Scalar::from_int(Q, v); }

Point pt3(long long x, long long y, long long z) { return Point({qs(x), qs(y), qs(z)}); }

Line mk(const FieldDescriptor& f, std::vector<long long> base, std::vector<long long> dir) {
  std::vector<Scalar> b, d;
  for (auto v : base) b.push_back(Scalar::from_int(f, v));
  for (auto v : dir) d.push_back(Scalar::from_int(f, v));
  return canonicalize_line(Point(std::move(b)), d);
}

}  // namespace

TEST_CASE("canonical direction scales the leading entry to one") {
  auto d = canonicalize_direction({qs(0), qs(-3), qs(6)});
  CHECK(d.pivot() == 1);
  CHECK(d.c[1].is_one());
  CHECK(d.c[2] == qs(-2));
  CHECK_THROWS_AS(canonicalize_direction({qs(0), qs(0), qs(0)}), std::invalid_argument);
}

TEST_CASE("canonical lines identify equal point sets") {
  auto l1 = mk(Q, {1, 2, 3}, {2, 4, 6});
  auto l2 = mk(Q, {2, 4, 6}, {-1, -2, -3});
  CHECK(l1 == l2);
  CHECK(l1.dir.c[0].is_one());
  CHECK(l1.base.c[l1.dir.pivot()].is_zero());
  // canonicalize is idempotent
  auto l3 = canonicalize_line(l1.base, {l1.dir.c[0], l1.dir.c[1], l1.dir.c[2]});
  CHECK(l3 == l1);
}

TEST_CASE("point membership and parameterization agree") {
  Rng rng(53);
  for (auto f : {FieldDescriptor::rat(), FieldDescriptor::fp(101)}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Scalar> b, d;
      bool zero = true;
      for (int i = 0; i < 3; ++i) {
        b.push_back(Scalar::from_int(f, static_cast<long long>(rng.below(9)) - 4));
        auto x = Scalar::from_int(f, static_cast<long long>(rng.below(9)) - 4);
        if (!x.is_zero()) zero = false;
        d.push_back(x);
      }
      if (zero) d[0] = Scalar::one(f);
      auto l = canonicalize_line(Point(b), d);
      for (long long t = -2; t <= 2; ++t) {
        auto p = line_at(l, Scalar::from_int(f, t));
        CHECK(point_on_line(p, l));
      }
      // perturbing a non-pivot coordinate at fixed parameter leaves the line
      auto off = line_at(l, Scalar::zero(f));
      off.c[(l.dir.pivot() + 1) % 3] = off.c[(l.dir.pivot() + 1) % 3] + Scalar::one(f);
      CHECK(!point_on_line(off, l));
    }
  }
}

TEST_CASE("line intersection kinds") {
  auto a = mk(Q, {0, 0, 0}, {1, 0, 0});
  auto b = mk(Q, {0, 0, 0}, {0, 1, 0});
  auto c = mk(Q, {0, 1, 0}, {1, 0, 0});   // parallel to a
  auto d = mk(Q, {5, 0, 0}, {1, 0, 0});   // same as a
  auto e = mk(Q, {0, 0, 1}, {0, 1, 0});   // skew with a
  auto ab = line_intersection(a, b);
  REQUIRE(ab.kind == IntersectKind::point);
  CHECK(ab.at == pt3(0, 0, 0));
  CHECK(line_intersection(a, c).kind == IntersectKind::disjoint);
  CHECK(line_intersection(a, d).kind == IntersectKind::coincident);
  CHECK(line_intersection(a, e).kind == IntersectKind::disjoint);
  auto f = mk(Q, {0, 1, 0}, {1, -1, 0});  // meets a at (1,0,0)
  auto af = line_intersection(a, f);
  REQUIRE(af.kind == IntersectKind::point);
  CHECK(af.at == pt3(1, 0, 0));
}

TEST_CASE("intersection is symmetric and exact over a prime field") {
  Rng rng(59);
  auto f = FieldDescriptor::fp(13);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Scalar> b1, d1, b2, d2;
    for (int i = 0; i < 3; ++i) {
      b1.push_back(Scalar::from_int(f, static_cast<long long>(rng.below(13))));
      b2.push_back(Scalar::from_int(f, static_cast<long long>(rng.below(13))));
      d1.push_back(Scalar::from_int(f, static_cast<long long>(rng.below(13))));
      d2.push_back(Scalar::from_int(f, static_cast<long long>(rng.below(13))));
    }
    auto nz = [&](std::vector<Scalar>& d) {
      if (d[0].is_zero() && d[1].is_zero() && d[2].is_zero()) d[0] = Scalar::one(f);
    };
    nz(d1);
    nz(d2);
    auto l1 = canonicalize_line(Point(b1), d1);
    auto l2 = canonicalize_line(Point(b2), d2);
    auto i12 = line_intersection(l1, l2);
    auto i21 = line_intersection(l2, l1);
    CHECK(i12.kind == i21.kind);
    if (i12.kind == IntersectKind::point) {
      CHECK(i12.at == i21.at);
      CHECK(point_on_line(i12.at, l1));
      CHECK(point_on_line(i12.at, l2));
    }
  }
}

TEST_CASE("direction rank") {
  auto d1 = canonicalize_direction({qs(1), qs(0), qs(0)});
  auto d2 = canonicalize_direction({qs(0), qs(1), qs(0)});
  auto d3 = canonicalize_direction({qs(1), qs(1), qs(0)});
  auto d4 = canonicalize_direction({qs(0), qs(0), qs(1)});
  CHECK(rank_of_directions({d1}, Q) == 1);
  CHECK(rank_of_directions({d1, d2, d3}, Q) == 2);
  CHECK(rank_of_directions({d1, d2, d4}, Q) == 3);
  CHECK(rank_of_directions({d1, d2, d3, d4}, Q) == 3);
}

TEST_CASE("arrangement validation") {
  Arrangement arr;
  arr.field = Q;
  arr.n = 3;
  arr.lines = {mk(Q, {0, 0, 0}, {1, 0, 0}), mk(Q, {0, 0, 0}, {0, 1, 0})};
  arr.validate();
  arr.lines.push_back(arr.lines[0]);
  CHECK_THROWS_AS(arr.validate(), InvariantViolation);  // duplicate without weights
  arr.weights = {1, 2, 3};
  arr.validate();  // duplicates allowed once weighted
  arr.weights = {1, 2};
  CHECK_THROWS_AS(arr.validate(), InvariantViolation);  // length mismatch
  arr.weights = {1, 2, 0};
  CHECK_THROWS_AS(arr.validate(), InvariantViolation);  // zero weight
}

TEST_CASE("concurrency map lists every pairwise meeting point") {
  // three concurrent lines through the origin plus one generic line
  Arrangement arr;
  arr.field = Q;
  arr.n = 3;
  arr.lines = {
      mk(Q, {0, 0, 0}, {1, 0, 0}),
      mk(Q, {0, 0, 0}, {0, 1, 0}),
      mk(Q, {0, 0, 0}, {0, 0, 1}),
      mk(Q, {0, 1, 0}, {1, 0, 0}),  // y = 1 in the z = 0 plane, meets line 1 at (0,1,0)
  };
  auto cm = concurrency_map(arr);
  REQUIRE(cm.size() == 2);
  auto origin = cm.at(pt3(0, 0, 0));
  CHECK(origin == std::set<std::size_t>{0, 1, 2});
  auto other = cm.at(pt3(0, 1, 0));
  CHECK(other == std::set<std::size_t>{1, 3});
  // sharded runs agree with the single-thread result
  for (unsigned threads : {1u, 2u, 3u, 7u}) {
    auto cm2 = concurrency_map(arr, threads);
    CHECK(cm2 == cm);
  }
}
