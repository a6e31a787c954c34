// SPDX-License-Identifier: Apache-2.0

#include "jointwork/configs.hpp"

#include <set>
#include <vector>

#include "doctest.h"
#include "jointwork/errors.hpp"

using namespace jw;

namespace {

const FieldDescriptor Q = FieldDescriptor::rat();

Point pt3(long long x, long long y, long long z) {
  return Point({Scalar::from_int(Q, x), Scalar::from_int(Q, y), Scalar::from_int(Q, z)});
}

}  // namespace

TEST_CASE("star lines pass through the origin and pairwise differ") {
  for (auto f : {FieldDescriptor::rat(), FieldDescriptor::fp(101)}) {
    auto arr = gen_star(7, 3, f);
    arr.validate();
    CHECK(arr.lines.size() == 7);
    Point origin({Scalar::zero(f), Scalar::zero(f), Scalar::zero(f)});
    std::set<Line, LineLess> seen;
    for (const auto& l : arr.lines) {
      CHECK(point_on_line(origin, l));
      CHECK(seen.insert(l).second);
    }
  }
  CHECK_THROWS_AS(gen_star(6, 3, FieldDescriptor::fp(5)), std::invalid_argument);
  CHECK_THROWS_AS(gen_star(2, 3, Q), std::invalid_argument);
}

TEST_CASE("any three star directions span") {
  auto arr = gen_star(9, 3, Q);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = i + 1; j < 9; ++j)
      for (std::size_t k = j + 1; k < 9; ++k) {
        CHECK(rank_of_directions(
                  {arr.lines[i].dir, arr.lines[j].dir, arr.lines[k].dir}, Q) == 3);
      }
}

TEST_CASE("grid lines cover each grid point exactly n times") {
  auto arr = gen_grid(3, 3, Q);
  arr.validate();
  CHECK(arr.lines.size() == 3 * 9);
  for (long long x = 0; x < 3; ++x)
    for (long long y = 0; y < 3; ++y)
      for (long long z = 0; z < 3; ++z) {
        unsigned hits = 0;
        for (const auto& l : arr.lines)
          if (point_on_line(pt3(x, y, z), l)) ++hits;
        CHECK(hits == 3);
      }
  // off-lattice points on at most one line
  unsigned hits = 0;
  for (const auto& l : arr.lines)
    if (point_on_line(pt3(0, 1, 5), l)) ++hits;
  CHECK(hits == 1);
  auto f2 = gen_grid(2, 2, FieldDescriptor::fp(3));
  f2.validate();
  CHECK(f2.lines.size() == 4);
  CHECK_THROWS_AS(gen_grid(4, 2, FieldDescriptor::fp(3)), std::invalid_argument);
}

TEST_CASE("coplanar lattice shapes and coverage") {
  auto cols = gen_coplanar_lattice(4);
  CHECK(cols[0].lines.size() == 4);
  CHECK(cols[1].lines.size() == 4);
  CHECK(cols[2].lines.size() == 7);
  for (const auto& arr : cols) {
    arr.validate();
    for (const auto& l : arr.lines) {
      CHECK(l.base.c[2].is_zero());
      CHECK(l.dir.c[2].is_zero());
    }
  }
  for (long long x = 0; x < 4; ++x)
    for (long long y = 0; y < 4; ++y)
      for (std::size_t g = 0; g < 3; ++g) {
        unsigned hits = 0;
        for (const auto& l : cols[g].lines)
          if (point_on_line(pt3(x, y, 0), l)) ++hits;
        CHECK(hits == 1);
      }
}

TEST_CASE("grid multijoint collections split the grid by axis") {
  auto cols = gen_grid_multijoint(3);
  for (std::size_t g = 0; g < 3; ++g) {
    cols[g].validate();
    CHECK(cols[g].lines.size() == 9);
    for (const auto& l : cols[g].lines)
      CHECK(l.dir == cols[g].lines[0].dir);  // one direction per collection
  }
  CHECK(cols[0].lines[0].dir != cols[1].lines[0].dir);
  CHECK(cols[1].lines[0].dir != cols[2].lines[0].dir);
}

TEST_CASE("random arrangements are seeded and distinct") {
  auto f = FieldDescriptor::fp(13);
  auto a = gen_random(40, 3, f, 99);
  auto b = gen_random(40, 3, f, 99);
  auto c = gen_random(40, 3, f, 100);
  a.validate();
  CHECK(a.lines.size() == 40);
  std::set<Line, LineLess> sa(a.lines.begin(), a.lines.end());
  CHECK(sa.size() == 40);
  REQUIRE(b.lines.size() == 40);
  for (std::size_t i = 0; i < 40; ++i) CHECK(a.lines[i] == b.lines[i]);
  bool differs = c.lines.size() != a.lines.size();
  for (std::size_t i = 0; !differs && i < 40; ++i) differs = !(c.lines[i] == a.lines[i]);
  CHECK(differs);
}

TEST_CASE("random generator saturates the full line set") {
  auto f = FieldDescriptor::fp(5);
  // p = 5, n = 2: 5 * 24 / 4 = 30 lines in total
  auto all = gen_random(30, 2, f, 7);
  CHECK(all.lines.size() == 30);
  std::set<Line, LineLess> s(all.lines.begin(), all.lines.end());
  CHECK(s.size() == 30);
  CHECK_THROWS_AS(gen_random(31, 2, f, 7), std::invalid_argument);
}

TEST_CASE("generate dispatches on kind") {
  GeneratorSpec spec;
  spec.kind = GeneratorSpec::Kind::star;
  spec.count = 5;
  spec.n = 3;
  spec.field = Q;
  auto arr = generate(spec);
  CHECK(arr.lines.size() == 5);
  spec.kind = GeneratorSpec::Kind::coplanar_lattice;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
}
