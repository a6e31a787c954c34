// SPDX-License-Identifier: Apache-2.0

#include "jointwork/probability.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "jointwork/configs.hpp"
#include "jointwork/errors.hpp"
#include "jointwork/joints.hpp"
#include "jointwork/poly.hpp"

using namespace jw;

namespace {

const FieldDescriptor Q = FieldDescriptor::rat();

// A star of `stars` concurrent spanning lines diluted with parallel lines
// that meet nothing: the only joint is the origin and a subcollection keeps
// it exactly when it draws at least three of the star lines.
Arrangement diluted_star(std::uint64_t stars, std::uint64_t decoys) {
  Arrangement arr = gen_star(stars, 3, Q);
  for (std::uint64_t i = 0; i < decoys; ++i) {
    Point base(std::vector<Scalar>{Scalar::zero(Q), Scalar::one(Q),
                                   Scalar::from_int(Q, static_cast<long long>(50 + i))});
    std::vector<Scalar> dir{Scalar::one(Q), Scalar::zero(Q), Scalar::zero(Q)};
    arr.lines.push_back(canonicalize_line(base, dir));
  }
  arr.validate();
  return arr;
}

// |s/m - a/b| <= 3 * sqrt(s(m-s)/m^3), cleared of denominators.
bool within_three_sigma(std::uint64_t s, std::uint64_t m, unsigned a, unsigned b) {
  const mpz_class sm(static_cast<unsigned long>(s));
  const mpz_class mm(static_cast<unsigned long>(m));
  const mpz_class lhs = (mpz_class(b) * sm - mpz_class(a) * mm);
  return lhs * lhs * mm <= 9 * mpz_class(b) * mpz_class(b) * sm * (mm - sm);
}

}  // namespace

TEST_CASE("exact tails at the pinned corners") {
  CHECK(exact_tail({6, 3, 4, 2}) == mpq_class(1, 5));
  CHECK(exact_tail({4, 2, 4, 2}) == 0);
  CHECK(exact_tail({10, 0, 4, 3}) == 1);
  CHECK(exact_tail({10, 4, 0, 2}) == 1);
  CHECK(exact_tail({0, 0, 0, 2}) == 1);
  // Drawing everything captures every line through the joint.
  CHECK(exact_tail({9, 5, 9, 3}) == 0);
  CHECK(exact_tail({100, 23, 30, 3}) == mpq_class("2319911174774/295500108219183"));

  CHECK_THROWS_AS(exact_tail({4, 5, 2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(exact_tail({4, 2, 5, 2}), std::invalid_argument);
  CHECK_THROWS_AS(exact_tail({4, 2, 2, 1}), std::invalid_argument);
}

TEST_CASE("the tail and its complement split the mass") {
  for (std::uint64_t L = 0; L <= 12; ++L)
    for (std::uint64_t K = 0; K <= L; ++K)
      for (std::uint64_t A = 0; A <= L; ++A)
        for (unsigned n = 2; n <= 4; ++n) {
          mpq_class head = 0;
          for (std::uint64_t k = n; k <= K && k <= A; ++k)
            head += mpq_class(binomial(K, k) * binomial(L - K, A - k), binomial(L, A));
          head.canonicalize();
          CHECK(exact_tail({L, K, A, n}) + head == 1);
        }
}

TEST_CASE("binomial symmetry across the swap of roles") {
  std::size_t tuples = 0;
  for (std::uint64_t L = 1; L <= 18; ++L)
    for (std::uint64_t K = 0; K <= L; ++K)
      for (std::uint64_t A = 0; A <= L; ++A)
        for (std::uint64_t k = 0; k <= K && k <= A; ++k) {
          const mpz_class lhs = binomial(K, k) * binomial(L - K, A - k) * binomial(L, K);
          const mpz_class rhs = binomial(A, k) * binomial(L - A, K - k) * binomial(L, A);
          if (lhs != rhs) {
            CAPTURE(L);
            CAPTURE(K);
            CAPTURE(A);
            CAPTURE(k);
            REQUIRE(lhs == rhs);
          }
          ++tuples;
        }
  CHECK(tuples >= 10000);
}

TEST_CASE("monte carlo tracks the exact tail") {
  const TailQuery q{6, 3, 4, 2};
  const McResult r = mc_estimate(q, 100000, 7);
  CHECK(r.samples == 100000);
  // P' = 4/5 here; the estimate must sit within three standard errors.
  CHECK(within_three_sigma(r.successes, r.samples, 4, 5));
  const Dec exact = Dec::ratio(4, 5, 20);
  const Dec band = r.std_error + r.std_error + r.std_error;
  CHECK(r.estimate - exact <= band);
  CHECK(exact - r.estimate <= band);

  SUBCASE("a fixed seed reruns bit for bit") {
    const McResult again = mc_estimate(q, 100000, 7);
    CHECK(again.successes == r.successes);
    CHECK(again.estimate.units == r.estimate.units);
  }
  SUBCASE("the thread count does not touch the draw") {
    CHECK(mc_estimate(q, 20000, 3, 1).successes == mc_estimate(q, 20000, 3, 4).successes);
  }
  SUBCASE("drawing the whole collection always captures") {
    const McResult full = mc_estimate({5, 3, 5, 2}, 500, 1);
    CHECK(full.successes == 500);
    CHECK(full.estimate.units == Dec::pow10(20));
  }
  SUBCASE("degenerate queries") {
    CHECK(mc_estimate({6, 2, 4, 3}, 300, 2).successes == 0);  // K < n never captures
    CHECK_THROWS_AS(mc_estimate(q, 0, 1), std::invalid_argument);
  }
}

TEST_CASE("seeded runs calibrate against the exact value") {
  // 3 sigma covers ~99.7% of binomial draws; demand 98% over 300 runs.
  const TailQuery q{6, 3, 4, 2};
  unsigned good = 0;
  for (std::uint64_t run = 0; run < 300; ++run) {
    const McResult r = mc_estimate(q, 20000, 1000 + run);
    if (within_three_sigma(r.successes, r.samples, 4, 5)) ++good;
  }
  CHECK(good >= 294);
}

TEST_CASE("witness subcollections on stars and grids") {
  SUBCASE("a star joint survives any six lines") {
    const Arrangement star = gen_star(20, 3, Q);
    // One joint of multiplicity C(20,3) = 1140, dyadic level 1024.
    const WitnessResult w = witness_subcollection(star, 1024, 3, 5, 4);
    CHECK(w.bucket_size == 1);
    CHECK(w.subset_size == 6);
    CHECK(w.subset.size() == 6);
    CHECK(w.captured == 1);
    CHECK(w.per_try == std::vector<std::size_t>(4, 1));
  }
  SUBCASE("level one forces the full grid") {
    const Arrangement grid = gen_grid(6, 3, Q);
    const WitnessResult w = witness_subcollection(grid, 1, 3, 9, 3);
    CHECK(w.subset_size == 108);
    CHECK(w.subset.size() == 108);
    CHECK(w.bucket_size == 216);
    CHECK(w.captured == 216);
    // The full collection is evaluated once, whatever the try budget.
    CHECK(w.per_try == std::vector<std::size_t>{216});
    CHECK(w.subset.front() == 0);
    CHECK(w.subset.back() == 107);
  }
  SUBCASE("bad calls refuse") {
    const Arrangement grid = gen_grid(3, 3, Q);
    CHECK_THROWS_AS(witness_subcollection(grid, 2, 3, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(witness_subcollection(grid, 1, 2, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(witness_subcollection(grid, 1, 3, 1, 0), std::invalid_argument);
  }
}

TEST_CASE("a diluted star measures the capture probability") {
  const Arrangement arr = diluted_star(23, 77);
  REQUIRE(arr.lines.size() == 100);
  const auto joints = find_joints(arr);
  REQUIRE(joints.size() == 1);
  CHECK(joints[0].K == 23);
  CHECK(joints[0].N == 1771);

  // Subsets of size 30 of the 100 lines; the joint survives a draw exactly
  // when at least 3 of the 23 star lines land in it.
  const mpq_class capture = 1 - exact_tail({100, 23, 30, 3});
  const WitnessResult w = witness_subcollection(arr, 1024, 3, 17, 300);
  CHECK(w.subset_size == 30);
  CHECK(w.bucket_size == 1);
  CHECK(w.captured == 1);
  REQUIRE(w.per_try.size() == 300);

  std::uint64_t hits = 0;
  for (std::size_t c : w.per_try) {
    CHECK(c <= 1);
    hits += c;
  }
  // Observed rate within four standard deviations of the prediction.
  mpq_class diff = mpq_class(static_cast<unsigned long>(hits), 300) - capture;
  diff.canonicalize();
  CHECK(diff * diff <= 16 * capture * (1 - capture) / 300);

  // Monte Carlo agrees with the same prediction through pure index draws.
  const McResult mc = mc_estimate({100, 23, 30, 3}, 200000, 11);
  const mpq_class est(static_cast<unsigned long>(mc.successes),
                      static_cast<unsigned long>(mc.samples));
  mpq_class mdiff = est - capture;
  mpq_class var = est * (1 - est) / mc.samples;
  CHECK(mdiff * mdiff <= 9 * var);
}

TEST_CASE("generic bound rows") {
  SUBCASE("the cube grid sits at the cubic-lattice constant") {
    const auto rows = bound_check_last(gen_grid(8, 3, Q), 3);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].level == 1);
    CHECK(rows[0].joints == 512);
    // 512 / 192^(3/2) = (1/27)^(1/2)
    CHECK(rows[0].ratio.units == mpz_class("19245008972987525483"));
    CHECK(rows[0].ratio.scale == 20);
  }
  SUBCASE("a star's single bucket uses its exact multiplicity") {
    const auto rows = bound_check_last(gen_star(30, 3, Q), 3);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].level == 2048);
    CHECK(rows[0].joints == 1);
    // sqrt(4060)/30^(3/2); the two rounding pipelines may differ in the
    // final digit.
    const Dec oracle = Dec::root_ratio(4060, 27000, 2, 20);
    mpz_class gap = rows[0].ratio.units - oracle.units;
    CHECK(abs(gap) <= 1);
    CHECK(rows[0].ratio.approx() == doctest::Approx(0.38777618592478106).epsilon(1e-12));
  }
}

TEST_CASE("degenerate concurrences refuse the bound") {
  SUBCASE("three coplanar families") {
    const auto fams = gen_coplanar_lattice(5);
    Arrangement flat;
    flat.field = Q;
    flat.n = 3;
    for (const Arrangement& f : fams)
      for (const Line& l : f.lines) flat.lines.push_back(l);
    flat.validate();
    bool refused = false;
    try {
      bound_check_last(flat, 3);
    } catch (const std::invalid_argument& e) {
      refused = true;
      CHECK(std::string(e.what()).find("fail to span") != std::string::npos);
    }
    CHECK(refused);
  }
  SUBCASE("a planar star names the degenerate point") {
    Arrangement flat;
    flat.field = Q;
    flat.n = 3;
    Point origin(std::vector<Scalar>(3, Scalar::zero(Q)));
    for (long long j = 0; j < 4; ++j) {
      std::vector<Scalar> dir{Scalar::one(Q), Scalar::from_int(Q, j), Scalar::zero(Q)};
      flat.lines.push_back(canonicalize_line(origin, dir));
    }
    flat.validate();
    bool refused = false;
    try {
      bound_check_last(flat, 3);
    } catch (const std::invalid_argument& e) {
      refused = true;
      CHECK(std::string(e.what()).find(origin.str()) != std::string::npos);
    }
    CHECK(refused);
  }
  SUBCASE("dimension mismatch and the point cap") {
    CHECK_THROWS_AS(bound_check_last(gen_grid(3, 3, Q), 2), std::invalid_argument);
    CHECK_THROWS_AS(bound_check_last(gen_grid(11, 3, Q), 3), CapExceeded);
  }
}

TEST_CASE("the capture probability stays positive") {
  // Subset size ceil(3L/K) with K >= 3 always leaves room for three hits.
  for (std::uint64_t L = 3; L <= 200; ++L)
    for (std::uint64_t K = 3; K <= L; ++K) {
      const std::uint64_t A = (3 * L + K - 1) / K;
      const mpq_class tail = exact_tail({L, K, A, 3});
      if (!(tail < 1)) {
        CAPTURE(L);
        CAPTURE(K);
        REQUIRE(tail < 1);
      }
    }
  // At K = 3 the subset is everything and capture is certain.
  CHECK(exact_tail({200, 3, 200, 3}) == 0);
}
