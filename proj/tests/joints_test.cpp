// SPDX-License-Identifier: Apache-2.0

#include "jointwork/joints.hpp"

#include <vector>

#include "doctest.h"
#include "jointwork/configs.hpp"
#include "jointwork/rng.hpp"

using namespace jw;

namespace {

const FieldDescriptor Q = FieldDescriptor::rat();

Direction dir3(const FieldDescriptor& f, long long x, long long y, long long z) {
  return canonicalize_direction(
      {Scalar::from_int(f, x), Scalar::from_int(f, y), Scalar::from_int(f, z)});
}

std::vector<Direction> random_dirs(const FieldDescriptor& f, unsigned dim, std::size_t k,
                                   Rng& rng) {
  std::vector<Direction> out;
  while (out.size() < k) {
    std::vector<Scalar> v;
    bool zero = true;
    for (unsigned i = 0; i < dim; ++i) {
      auto s = Scalar::from_int(f, static_cast<long long>(rng.below(5)) - 2);
      if (!s.is_zero()) zero = false;
      v.push_back(s);
    }
    if (zero) continue;
    out.push_back(canonicalize_direction(std::move(v)));
  }
  return out;
}

}  // namespace

TEST_CASE("multiplicity on hand configurations") {
  auto ex = dir3(Q, 1, 0, 0), ey = dir3(Q, 0, 1, 0), ez = dir3(Q, 0, 0, 1);
  auto exy = dir3(Q, 1, 1, 0);
  CHECK(multiplicity({ex, ey, ez}, 3) == 1);
  CHECK(multiplicity({ex, ey, exy}, 3) == 0);        // coplanar
  CHECK(multiplicity({ex, ey, ez, exy}, 3) == 3);    // all triples but the coplanar one
  CHECK(multiplicity({ex, ex, ey, ez}, 3) == 2);     // duplicated instance picks either copy
  CHECK(multiplicity({ex, ey}, 3) == 0);             // too few
  CHECK(multiplicity({ex, ey, exy}, 2) == 3);        // distinct pairs in the plane
  CHECK(multiplicity({ex, ex, ey}, 2) == 2);
}

TEST_CASE("grouped counter matches enumeration") {
  Rng rng(61);
  for (auto f : {FieldDescriptor::rat(), FieldDescriptor::fp(7)}) {
    for (int trial = 0; trial < 12; ++trial) {
      auto dirs = random_dirs(f, 3, 30, rng);  // > 24 forces the grouped path
      CHECK(multiplicity(dirs, 3) == multiplicity_enumerated(dirs, 3));
      std::vector<Direction> dirs2(dirs.begin(), dirs.begin() + 12);
      CHECK(multiplicity(dirs2, 3) == multiplicity_enumerated(dirs2, 3));
    }
  }
  // dimension 2
  for (int trial = 0; trial < 12; ++trial) {
    auto dirs = random_dirs(FieldDescriptor::fp(5), 2, 20, rng);
    CHECK(multiplicity(dirs, 2) == multiplicity_enumerated(dirs, 2));
  }
}

TEST_CASE("grid joints are the grid points with multiplicity one") {
  auto arr = gen_grid(2, 3, Q);
  auto joints = find_joints(arr);
  CHECK(joints.size() == 8);
  for (const auto& j : joints) {
    CHECK(j.K == 3);
    CHECK(j.N == 1);
    CHECK(j.line_ids.size() == 3);
  }
}

TEST_CASE("star has one joint of binomial multiplicity") {
  auto arr = gen_star(5, 3, Q);
  auto joints = find_joints(arr);
  REQUIRE(joints.size() == 1);
  CHECK(joints[0].K == 5);
  CHECK(joints[0].N == 10);  // C(5,3)
  CHECK(joints[0].point == Point({Scalar::zero(Q), Scalar::zero(Q), Scalar::zero(Q)}));
}

TEST_CASE("weights scale the multiset counts") {
  auto arr = gen_grid(2, 3, Q);
  arr.weights.assign(arr.lines.size(), 2);
  auto joints = find_joints(arr);
  CHECK(joints.size() == 8);
  for (const auto& j : joints) {
    CHECK(j.K == 6);
    CHECK(j.N == 8);  // one of two copies per axis
  }
}

TEST_CASE("coplanar arrangements have no joints") {
  Arrangement arr;
  arr.field = Q;
  arr.n = 3;
  auto mk = [&](long long bx, long long by, long long dx, long long dy) {
    return canonicalize_line(Point({Scalar::from_int(Q, bx), Scalar::from_int(Q, by),
                                    Scalar::zero(Q)}),
                             {Scalar::from_int(Q, dx), Scalar::from_int(Q, dy),
                              Scalar::zero(Q)});
  };
  arr.lines = {mk(0, 0, 1, 0), mk(0, 0, 0, 1), mk(0, 1, 1, -1), mk(0, 2, 1, 1)};
  CHECK(find_joints(arr).empty());
}

TEST_CASE("buckets key on floored powers of two") {
  auto arr = gen_star(100, 3, Q);
  auto joints = find_joints(arr);
  REQUIRE(joints.size() == 1);
  CHECK(joints[0].N == 161700);
  auto b = bucket(joints);
  REQUIRE(b.size() == 1);
  const auto& key = b.begin()->first;
  CHECK(key.N_floor == 131072);  // 2^17
  CHECK(key.k_floor == 64);
  CHECK(b.begin()->second.size() == 1);
}

TEST_CASE("weighted sums freeze to independently computed digits") {
  JointRecord r;
  r.K = 2;
  r.N = 10;
  auto s = weighted_sum({r}, 2, 50);
  CHECK(s.units == mpz_class("316227766016837933199889354443271853371955513932522"));
  CHECK(s.scale == 50);
  auto arr = gen_star(100, 3, Q);
  auto joints = find_joints(arr);
  auto t = weighted_sum(joints, 2, 50);
  CHECK(t.units ==
        mpz_class("40211938525766200618954280277532505227541851205879547"));
  // exact integer case
  auto u = weighted_sum(joints, 1, 10);
  CHECK(u.cmp(Dec::from_int(161700, 0)) == 0);
}

TEST_CASE("grid multijoints are the grid points") {
  auto cols = gen_grid_multijoint(2);
  auto mjs = find_multijoints(cols[0], cols[1], cols[2]);
  CHECK(mjs.size() == 8);
  for (const auto& m : mjs) {
    CHECK(m.counts == std::array<std::uint64_t, 3>{1, 1, 1});
    CHECK(m.Nprime == 1);
    for (const auto& ids : m.line_ids) CHECK(ids.size() == 1);
  }
}

TEST_CASE("coplanar lattice has no multijoints but full coincidence mass") {
  auto cols = gen_coplanar_lattice(3);
  auto mjs = find_multijoints(cols[0], cols[1], cols[2]);
  CHECK(mjs.empty());
  auto s = coincidence_sum(cols[0], cols[1], cols[2], 30);
  CHECK(s.cmp(Dec::from_int(9, 0)) == 0);
}

TEST_CASE("one collection three times relates to plain joints") {
  for (const auto& arr :
       {gen_grid(3, 3, FieldDescriptor::fp(13)), gen_star(6, 3, Q)}) {
    auto joints = find_joints(arr);
    auto mjs = find_multijoints(arr, arr, arr);
    REQUIRE(!joints.empty());
    REQUIRE(mjs.size() == joints.size());
    for (std::size_t i = 0; i < joints.size(); ++i) {
      CHECK(mjs[i].point == joints[i].point);
      CHECK(mjs[i].Nprime == 6 * joints[i].N);
    }
  }
}

TEST_CASE("weighted collections reach the grouped cross counter") {
  auto f = Q;
  auto axis = [&](long long dx, long long dy, long long dz) {
    Arrangement a;
    a.field = f;
    a.n = 3;
    a.lines = {canonicalize_line(Point({Scalar::zero(f), Scalar::zero(f), Scalar::zero(f)}),
                                 {Scalar::from_int(f, dx), Scalar::from_int(f, dy),
                                  Scalar::from_int(f, dz)})};
    a.weights = {200};
    return a;
  };
  // spanning directions: 200^3 ordered cross-triples, all spanning
  auto mjs = find_multijoints(axis(1, 0, 0), axis(0, 1, 0), axis(0, 0, 1));
  REQUIRE(mjs.size() == 1);
  CHECK(mjs[0].Nprime == mpz_class(200) * 200 * 200);
  CHECK(mjs[0].counts == std::array<std::uint64_t, 3>{200, 200, 200});
  // coplanar directions: everything cancels
  auto flat = find_multijoints(axis(1, 0, 0), axis(0, 1, 0), axis(1, 1, 0));
  CHECK(flat.empty());
  // scaling consistency between the enumerated and grouped paths
  auto small = [&](long long dx, long long dy, long long dz) {
    auto a = axis(dx, dy, dz);
    a.weights = {7};
    return a;
  };
  auto little = find_multijoints(small(1, 0, 0), small(0, 1, 0), small(1, 1, 1));
  REQUIRE(little.size() == 1);
  auto big = find_multijoints(axis(1, 0, 0), axis(0, 1, 0), axis(1, 1, 1));
  REQUIRE(big.size() == 1);
  CHECK(little[0].Nprime == mpz_class(7) * 7 * 7);
  CHECK(big[0].Nprime == mpz_class(200) * 200 * 200);
}
