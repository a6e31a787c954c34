// SPDX-License-Identifier: Apache-2.0

#include "jointwork/peeling.hpp"

#include <set>
#include <vector>

#include "doctest.h"
#include "jointwork/configs.hpp"
#include "jointwork/errors.hpp"
#include "jointwork/joints.hpp"
#include "jointwork/rng.hpp"

using namespace jw;

namespace {

const FieldDescriptor Q = FieldDescriptor::rat();
const FieldDescriptor F101 = FieldDescriptor::fp(101);

// Smallest d with d^n > n! * m, the generic vanishing-degree guarantee.
unsigned degree_guarantee(unsigned n, std::size_t m) {
  mpz_class prod;
  mpz_fac_ui(prod.get_mpz_t(), n);
  prod *= static_cast<unsigned long>(m);
  mpz_class r;
  mpz_root(r.get_mpz_t(), prod.get_mpz_t(), n);
  return static_cast<unsigned>(r.get_ui()) + 1;
}

// Replays only the arithmetic shape of a certificate: per-step removal
// counts against degrees, monotone degrees, and the generic guarantee.
void check_shape(const PeelingCertificate& cert, const Arrangement& arr) {
  std::size_t remaining = cert.total_removed;
  unsigned prev = 0;
  std::size_t seen = 0;
  std::set<std::size_t> used;
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    const PeelStep& s = cert.steps[k];
    CHECK(used.insert(s.line_id).second);
    CHECK(s.line_id < arr.lines.size());
    CHECK(s.removed_points.size() <= s.degree_d);
    CHECK(s.degree_d <= degree_guarantee(arr.n, remaining));
    if (k > 0) CHECK(s.degree_d <= prev);
    for (const Point& p : s.removed_points) CHECK(point_on_line(p, arr.lines[s.line_id]));
    prev = s.degree_d;
    remaining -= s.removed_points.size();
    seen += s.removed_points.size();
  }
  CHECK(remaining == 0);
  CHECK(seen == cert.total_removed);
  CHECK(cert.steps.size() <= arr.lines.size());
}

Line rational_line(long long bx, long long by, long long bz, long long dx, long long dy,
                   long long dz) {
  Point base({Scalar::from_int(Q, bx), Scalar::from_int(Q, by), Scalar::from_int(Q, bz)});
  return canonicalize_line(
      base, {Scalar::from_int(Q, dx), Scalar::from_int(Q, dy), Scalar::from_int(Q, dz)});
}

}  // namespace

TEST_CASE("star arrangements peel in a single removing step") {
  for (const FieldDescriptor& f : {Q, F101}) {
    Arrangement arr = gen_star(5, 3, f);
    PeelingCertificate cert = peel(arr);
    REQUIRE(cert.steps.size() == 1);
    CHECK(cert.steps[0].line_id == 0);
    CHECK(cert.steps[0].degree_d == 1);
    CHECK(cert.steps[0].removed_points.size() == 1);
    CHECK(cert.total_removed == 1);
    // single joint of multiplicity C(5,3) = 10, dyadic floor 8
    REQUIRE(cert.bucket_counts.size() == 1);
    CHECK(cert.bucket_counts[0].first == 8);
    CHECK(cert.bucket_counts[0].second == 1);
    CHECK(cert.observed_constant.cmp(Dec::ratio(1, 5, 20)) == 0);
    CHECK(verify_certificate(arr, cert).valid);
    check_shape(cert, arr);
  }
}

TEST_CASE("grids drain with degrees capped by the side length") {
  for (const FieldDescriptor& f : {Q, F101}) {
    Arrangement arr = gen_grid(3, 3, f);
    PeelingCertificate cert = peel(arr);
    CHECK(cert.total_removed == 27);
    CHECK(cert.steps[0].line_id == 0);
    CHECK(cert.steps[0].degree_d == 3);
    CHECK(cert.steps[0].removed_points.size() == 3);
    for (const PeelStep& s : cert.steps) CHECK(s.degree_d <= 3);
    CHECK(cert.steps.size() <= 27);
    REQUIRE(cert.bucket_counts.size() == 1);
    CHECK(cert.bucket_counts[0].first == 1);
    CHECK(cert.bucket_counts[0].second == 27);
    CHECK(cert.observed_constant.cmp(Dec::ratio(1, 3, 20)) == 0);
    check_shape(cert, arr);
    CertificateCheck res = verify_certificate(arr, cert);
    CHECK(res.valid);
    CHECK(res.reason.empty());
  }
}

TEST_CASE("arrangements without joints produce empty certificates") {
  Arrangement arr;
  arr.field = Q;
  arr.n = 3;
  arr.lines.push_back(rational_line(0, 0, 0, 1, 0, 0));
  arr.lines.push_back(rational_line(0, 1, 0, 1, 0, 0));
  PeelingCertificate cert = peel(arr);
  CHECK(cert.steps.empty());
  CHECK(cert.total_removed == 0);
  CHECK(cert.bucket_counts.empty());
  CHECK(cert.observed_constant.units == 0);
  CHECK(verify_certificate(arr, cert).valid);
  BoundReport rep = bound_report(cert, arr.lines.size(), 3);
  CHECK(rep.ratio.units == 0);
  CHECK(rep.bound_holds);
  CHECK(rep.bucket_ratios.empty());
}

TEST_CASE("joint-free lines are deleted by zero-removal steps") {
  Arrangement arr = gen_star(4, 3, Q);
  // Crosses no star line: the intersection would need parameter 7/5.
  arr.lines.push_back(rational_line(0, 5, 7, 1, 0, 0));
  PeelingCertificate cert = peel(arr);
  REQUIRE(cert.steps.size() == 2);
  CHECK(cert.steps[0].line_id == 4);
  CHECK(cert.steps[0].removed_points.empty());
  CHECK(cert.steps[0].degree_d == 1);
  CHECK(cert.steps[1].line_id == 0);
  CHECK(cert.steps[1].removed_points.size() == 1);
  CHECK(cert.total_removed == 1);
  CHECK(verify_certificate(arr, cert).valid);
}

TEST_CASE("tampered certificates are rejected with the failing step") {
  Arrangement arr = gen_grid(2, 3, F101);
  PeelingCertificate cert = peel(arr);
  REQUIRE(verify_certificate(arr, cert).valid);
  REQUIRE(cert.steps[0].removed_points.size() == 2);

  SUBCASE("degree claim lowered") {
    cert.steps[0].degree_d = 1;
    CertificateCheck res = verify_certificate(arr, cert);
    CHECK(!res.valid);
    CHECK(res.step == 0);
    CHECK(res.reason == "degree claim does not match the recomputed minimum");
  }
  SUBCASE("degree claim raised") {
    cert.steps[0].degree_d = 5;
    CertificateCheck res = verify_certificate(arr, cert);
    CHECK(!res.valid);
    CHECK(res.step == 0);
    CHECK(res.reason == "degree claim does not match the recomputed minimum");
  }
  SUBCASE("removed point deleted from the last removing step") {
    for (std::size_t k = cert.steps.size(); k-- > 0;) {
      if (cert.steps[k].removed_points.empty()) continue;
      cert.steps[k].removed_points.pop_back();
      break;
    }
    CertificateCheck res = verify_certificate(arr, cert);
    CHECK(!res.valid);
    CHECK(res.step == cert.steps.size());
    CHECK(res.reason == "coverage: joints survive the replay");
  }
  SUBCASE("removed point swapped onto the wrong line") {
    std::size_t other = 0;
    for (std::size_t k = 1; k < cert.steps.size(); ++k)
      if (!cert.steps[k].removed_points.empty()) {
        other = k;
        break;
      }
    REQUIRE(other > 0);
    cert.steps[0].removed_points[0] = cert.steps[other].removed_points[0];
    CertificateCheck res = verify_certificate(arr, cert);
    CHECK(!res.valid);
    CHECK(res.step == 0);
    CHECK(res.reason == "removed point misses the step's line");
  }
  SUBCASE("foreign point smuggled in") {
    std::vector<Scalar> c{Scalar::from_int(F101, 50), Scalar::from_int(F101, 50),
                          Scalar::from_int(F101, 50)};
    cert.steps[0].removed_points[0] = Point(c);
    CertificateCheck res = verify_certificate(arr, cert);
    CHECK(!res.valid);
    CHECK(res.reason == "removed point is not a joint");
  }
  SUBCASE("line id out of range") {
    cert.steps[0].line_id = 999;
    CertificateCheck res = verify_certificate(arr, cert);
    CHECK(!res.valid);
    CHECK(res.step == 0);
    CHECK(res.reason == "line id out of range");
  }
  SUBCASE("line removed twice") {
    cert.steps[1].line_id = cert.steps[0].line_id;
    CertificateCheck res = verify_certificate(arr, cert);
    CHECK(!res.valid);
    CHECK(res.step == 1);
    CHECK(res.reason == "line removed twice");
  }
  SUBCASE("step appended after exhaustion") {
    PeelStep extra;
    extra.line_id = 0;
    extra.degree_d = 1;
    cert.steps.push_back(extra);
    CertificateCheck res = verify_certificate(arr, cert);
    CHECK(!res.valid);
    CHECK(res.step == cert.steps.size() - 1);
    CHECK(res.reason == "step appears after the joint set was exhausted");
  }
  SUBCASE("total_removed inflated") {
    cert.total_removed += 1;
    CertificateCheck res = verify_certificate(arr, cert);
    CHECK(!res.valid);
    CHECK(res.reason == "total_removed does not match the joint count");
  }
  SUBCASE("bucket counts cleared") {
    cert.bucket_counts.clear();
    CertificateCheck res = verify_certificate(arr, cert);
    CHECK(!res.valid);
    CHECK(res.reason == "multiplicity buckets do not match");
  }
}

TEST_CASE("peel and verify round-trip on random arrangements") {
  Rng rng(20240817);
  // word prime field: uniform small arrangements, joint-rich at p = 5
  const FieldDescriptor f5 = FieldDescriptor::fp(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::uint64_t L = 3 + rng.below(10);
    Arrangement arr = gen_random(L, 3, f5, rng.next());
    PeelingCertificate cert = peel(arr);
    CHECK(verify_certificate(arr, cert).valid);
    check_shape(cert, arr);
  }
  // rationals: small-coordinate lines through a tight cluster
  for (int trial = 0; trial < 50; ++trial) {
    std::set<Line, LineLess> seen;
    while (seen.size() < 3 + rng.below(3)) {
      long long b[3], d[3];
      bool zero = true;
      for (int i = 0; i < 3; ++i) {
        b[i] = static_cast<long long>(rng.below(3)) - 1;
        d[i] = static_cast<long long>(rng.below(3)) - 1;
        if (d[i]) zero = false;
      }
      if (zero) continue;
      seen.insert(rational_line(b[0], b[1], b[2], d[0], d[1], d[2]));
    }
    Arrangement arr;
    arr.field = Q;
    arr.n = 3;
    arr.lines.assign(seen.begin(), seen.end());
    PeelingCertificate cert = peel(arr);
    CHECK(verify_certificate(arr, cert).valid);
    check_shape(cert, arr);
  }
}

TEST_CASE("grid ratios reproduce the closed form") {
  const mpz_class expected("19245008972987525483");  // floor(sqrt(1/27) * 10^20)
  for (std::uint64_t N = 4; N <= 7; ++N) {
    Arrangement arr = gen_grid(N, 3, F101);
    PeelingCertificate cert = peel(arr);
    CHECK(cert.total_removed == N * N * N);
    BoundReport rep = bound_report(cert, arr.lines.size(), 3);
    CHECK(rep.ratio.units == expected);
    CHECK(rep.ratio.scale == 20);
    CHECK(rep.bound_holds);
    // all multiplicities are 1, so the lone bucket repeats the ratio
    REQUIRE(rep.bucket_ratios.size() == 1);
    CHECK(rep.bucket_ratios[0].first == 1);
    CHECK(rep.bucket_ratios[0].second.cmp(rep.ratio) == 0);
  }
}

TEST_CASE("star reports are exact at both scales") {
  Arrangement small = gen_star(5, 3, Q);
  BoundReport rep5 = bound_report(peel(small), 5, 3);
  // sqrt(8/125) to 20 digits, N floor 8 for multiplicity 10
  REQUIRE(rep5.bucket_ratios.size() == 1);
  CHECK(rep5.bucket_ratios[0].first == 8);
  CHECK(rep5.bucket_ratios[0].second.units == mpz_class("25298221281347034655"));

  Arrangement big = gen_star(100, 3, Q);
  PeelingCertificate cert = peel(big);
  CHECK(cert.total_removed == 1);
  BoundReport rep = bound_report(cert, 100, 3);
  CHECK(rep.ratio.cmp(Dec::ratio(1, 1000, 20)) == 0);  // 1 / 100^(3/2) = 0.001
  CHECK(rep.bound_holds);
  REQUIRE(rep.bucket_ratios.size() == 1);
  CHECK(rep.bucket_ratios[0].first == 131072);  // C(100,3) = 161700
  CHECK(rep.bucket_ratios[0].second.cmp(Dec::root_ratio(131072, 1000000, 2, 20)) == 0);
}

TEST_CASE("bound_report rejects degenerate dimensions") {
  PeelingCertificate cert;
  CHECK_THROWS_AS(bound_report(cert, 4, 1), std::invalid_argument);
  BoundReport rep = bound_report(cert, 0, 3);
  CHECK(rep.bound_holds);
  CHECK(rep.ratio.units == 0);
}
