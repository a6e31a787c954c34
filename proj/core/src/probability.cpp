// SPDX-License-Identifier: Apache-2.0

#include "jointwork/probability.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "jointwork/errors.hpp"
#include "jointwork/joints.hpp"
#include "jointwork/parallel.hpp"
#include "jointwork/poly.hpp"
#include "jointwork/rng.hpp"

namespace jw {

void TailQuery::validate() const {
  if (K > L) throw std::invalid_argument("tail query: K exceeds L");
  if (A > L) throw std::invalid_argument("tail query: A exceeds L");
  if (n < 2) throw std::invalid_argument("tail query: n must be at least 2");
}

mpq_class exact_tail(const TailQuery& q) {
  q.validate();
  mpz_class num = 0;
  for (std::uint64_t k = 0; k < q.n; ++k) {
    if (k > q.K || k > q.A) continue;
    num += binomial(q.K, k) * binomial(q.L - q.K, q.A - k);
  }
  mpq_class out(num, binomial(q.L, q.A));
  out.canonicalize();
  return out;
}

McResult mc_estimate(const TailQuery& q, std::uint64_t samples, std::uint64_t seed,
                     unsigned threads) {
  q.validate();
  if (samples == 0) throw std::invalid_argument("mc_estimate: need at least one sample");
  if (q.L > 0xffffffffULL) throw std::invalid_argument("mc_estimate: L too large to sample");

  const Rng master(seed);
  const auto counts = parallel_map_chunks<std::uint64_t>(
      samples, threads, 4096, [&](std::size_t chunk_idx, std::size_t b, std::size_t e) {
        Rng rng = master.stream(chunk_idx);
        std::uint64_t hits = 0;
        for (std::size_t i = b; i < e; ++i) {
          const auto draw = rng.sample(static_cast<std::uint32_t>(q.A),
                                       static_cast<std::uint32_t>(q.L));
          std::uint64_t marked = 0;
          for (std::uint32_t id : draw)
            if (id < q.K) ++marked;
          if (marked >= q.n) ++hits;
        }
        return hits;
      });

  McResult out;
  out.samples = samples;
  for (std::uint64_t c : counts) out.successes += c;
  const mpz_class s(static_cast<unsigned long>(out.successes));
  const mpz_class m(static_cast<unsigned long>(samples));
  out.estimate = Dec::ratio(s, m, 20);
  out.std_error = Dec::root_ratio(s * (m - s), m * m * m, 2, 20);
  return out;
}

namespace {

// Points of the joints whose multiplicity floors to `level`, every k stratum
// included.
std::vector<Point> bucket_at_level(const std::vector<JointRecord>& joints,
                                   const mpz_class& level) {
  std::vector<Point> out;
  for (const auto& [key, recs] : bucket(joints)) {
    if (key.N_floor != level) continue;
    for (const JointRecord& r : recs) out.push_back(r.point);
  }
  return out;
}

// Smallest s with s^n * level >= (a_n * L)^n, the exact ceiling of
// a_n * L / level^(1/n).
mpz_class subcollection_size(std::uint64_t L, unsigned a_n, const mpz_class& level,
                             unsigned n) {
  mpz_class target;
  mpz_ui_pow_ui(target.get_mpz_t(),
                static_cast<unsigned long>(a_n) * static_cast<unsigned long>(L), n);
  mpz_class s;
  mpz_cdiv_q(s.get_mpz_t(), target.get_mpz_t(), level.get_mpz_t());
  mpz_root(s.get_mpz_t(), s.get_mpz_t(), n);
  mpz_class pow;
  for (;;) {
    mpz_pow_ui(pow.get_mpz_t(), s.get_mpz_t(), n);
    if (pow * level >= target) break;
    ++s;
  }
  return s;
}

std::size_t count_captured(const Arrangement& arr, const std::vector<std::size_t>& ids,
                           const std::set<Point, PointLess>& targets) {
  Arrangement sub;
  sub.field = arr.field;
  sub.n = arr.n;
  for (std::size_t id : ids) {
    sub.lines.push_back(arr.lines[id]);
    if (!arr.weights.empty()) sub.weights.push_back(arr.weight(id));
  }
  std::size_t captured = 0;
  for (const JointRecord& j : find_joints(sub))
    if (targets.count(j.point)) ++captured;
  return captured;
}

}  // namespace

WitnessResult witness_subcollection(const Arrangement& arr, const mpz_class& level,
                                    unsigned a_n, std::uint64_t seed, unsigned tries) {
  arr.validate();
  if (a_n < arr.n) throw std::invalid_argument("witness_subcollection: a_n below the dimension");
  if (tries == 0) throw std::invalid_argument("witness_subcollection: need at least one try");
  if (level < 1) throw std::invalid_argument("witness_subcollection: level must be positive");

  const auto joints = find_joints(arr);
  std::set<Point, PointLess> targets;
  for (Point& p : bucket_at_level(joints, level)) targets.insert(std::move(p));
  if (targets.empty())
    throw std::invalid_argument("witness_subcollection: no joints at this level");

  const std::uint64_t L = arr.lines.size();
  const mpz_class want = subcollection_size(L, a_n, level, arr.n);

  WitnessResult out;
  out.bucket_size = targets.size();

  if (want >= static_cast<unsigned long>(L)) {
    out.subset_size = L;
    out.subset.resize(L);
    for (std::size_t i = 0; i < L; ++i) out.subset[i] = i;
    out.captured = count_captured(arr, out.subset, targets);
    out.per_try.push_back(out.captured);
    return out;
  }

  const auto s = static_cast<std::uint32_t>(want.get_ui());
  out.subset_size = s;
  Rng rng(seed);
  for (unsigned t = 0; t < tries; ++t) {
    const auto draw = rng.sample(s, static_cast<std::uint32_t>(L));
    std::vector<std::size_t> ids(draw.begin(), draw.end());
    std::sort(ids.begin(), ids.end());
    const std::size_t captured = count_captured(arr, ids, targets);
    out.per_try.push_back(captured);
    if (t == 0 || captured > out.captured) {
      out.captured = captured;
      out.subset = std::move(ids);
    }
  }
  return out;
}

std::vector<BucketBound> bound_check_last(const Arrangement& arr, unsigned n,
                                          unsigned threads) {
  arr.validate();
  if (n != arr.n) throw std::invalid_argument("bound_check_last: n must match the arrangement");
  if (n < 2) throw std::invalid_argument("bound_check_last: n must be at least 2");

  const auto conc = concurrency_map(arr, threads);
  if (conc.size() > kGenericityPointCap)
    throw CapExceeded("bound_check_last: concurrency points exceed the genericity check cap");
  for (const auto& [pt, ids] : conc) {
    if (ids.size() < n) continue;
    std::vector<Direction> dirs;
    dirs.reserve(ids.size());
    for (std::size_t id : ids) dirs.push_back(arr.lines[id].dir);
    if (multiplicity(dirs, n) != binomial(ids.size(), n))
      throw std::invalid_argument("bound_check_last: " +
                                  std::to_string(static_cast<unsigned long long>(ids.size())) +
                                  " concurrent lines fail to span at " + pt.str());
  }

  const auto joints = find_joints(arr, threads);
  std::map<mpz_class, std::vector<JointRecord>> by_level;
  for (const auto& [key, recs] : bucket(joints))
    for (const JointRecord& r : recs) by_level[key.N_floor].push_back(r);

  mpz_class Ln;
  mpz_ui_pow_ui(Ln.get_mpz_t(), static_cast<unsigned long>(arr.lines.size()), n);
  const Dec den = Dec::root(Ln, n - 1, 40);

  std::vector<BucketBound> rows;
  for (auto& [level, recs] : by_level) {
    BucketBound row;
    row.level = level;
    row.joints = recs.size();
    const Dec num = weighted_sum(recs, n - 1, 40);
    row.ratio = Dec::ratio(num.units, den.units, 20);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace jw
