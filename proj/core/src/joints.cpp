// SPDX-License-Identifier: Apache-2.0

#include "jointwork/joints.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>

#include "jointwork/errors.hpp"
#include "jointwork/parallel.hpp"

namespace jw {
namespace {

mpz_class binom_u(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Distinct canonical directions with multiset counts.
struct ClassList {
  std::vector<Direction> dirs;
  std::vector<std::uint64_t> count;
  std::uint64_t total = 0;
};

ClassList group(const std::vector<Direction>& dirs) {
  ClassList cl;
  std::map<Point, std::size_t, PointLess> seen;
  for (const auto& d : dirs) {
    auto [it, fresh] = seen.emplace(Point(d.c), cl.dirs.size());
    if (fresh) {
      cl.dirs.push_back(d);
      cl.count.push_back(0);
    }
    ++cl.count[it->second];
    ++cl.total;
  }
  return cl;
}

// Canonical directions are projective representatives, so two distinct ones
// are linearly independent.
bool spans3(const Direction& a, const Direction& b, const Direction& c) {
  Scalar det = a.c[0] * (b.c[1] * c.c[2] - b.c[2] * c.c[1]) -
               a.c[1] * (b.c[0] * c.c[2] - b.c[2] * c.c[0]) +
               a.c[2] * (b.c[0] * c.c[1] - b.c[1] * c.c[0]);
  return !det.is_zero();
}

Direction cross_dir(const Direction& a, const Direction& b) {
  std::vector<Scalar> w = {a.c[1] * b.c[2] - a.c[2] * b.c[1],
                           a.c[2] * b.c[0] - a.c[0] * b.c[2],
                           a.c[0] * b.c[1] - a.c[1] * b.c[0]};
  return canonicalize_direction(std::move(w));
}

mpz_class grouped2(const ClassList& cl) {
  mpz_class r = binom_u(cl.total, 2);
  for (auto k : cl.count) r -= binom_u(k, 2);
  return r;
}

// Inclusion-exclusion over the planes spanned by class pairs. A dependent
// triple of distinct classes lies in exactly one such plane; rank-1 triples
// are the within-class ones.
mpz_class grouped3(const ClassList& cl) {
  mpz_class degenerate = 0;
  for (auto k : cl.count) degenerate += binom_u(k, 3);
  std::map<Point, std::set<std::size_t>, PointLess> planes;
  for (std::size_t i = 0; i < cl.dirs.size(); ++i)
    for (std::size_t j = i + 1; j < cl.dirs.size(); ++j) {
      Direction normal = cross_dir(cl.dirs[i], cl.dirs[j]);
      auto& members = planes[Point(normal.c)];
      members.insert(i);
      members.insert(j);
    }
  for (const auto& plane : planes) {
    std::uint64_t m = 0;
    mpz_class within = 0;
    for (auto c : plane.second) {
      m += cl.count[c];
      within += binom_u(cl.count[c], 3);
    }
    degenerate += binom_u(m, 3) - within;
  }
  return binom_u(cl.total, 3) - degenerate;
}

}  // namespace

mpz_class multiplicity_enumerated(const std::vector<Direction>& dirs, unsigned n) {
  if (n == 0) throw InvariantViolation("multiplicity: n must be positive");
  const std::size_t m = dirs.size();
  if (m < n) return 0;
  const unsigned dim = dirs[0].dim();
  const FieldDescriptor field = dirs[0].c[0].field();
  mpz_class count = 0;
  std::vector<std::size_t> idx(n);
  for (unsigned i = 0; i < n; ++i) idx[i] = i;
  const bool fast3 = (n == 3 && dim == 3);
  while (true) {
    bool spanning;
    if (n == 2) {
      spanning = dirs[idx[0]] != dirs[idx[1]];
    } else if (fast3) {
      spanning = spans3(dirs[idx[0]], dirs[idx[1]], dirs[idx[2]]);
    } else {
      std::vector<Direction> sub;
      sub.reserve(n);
      for (auto i : idx) sub.push_back(dirs[i]);
      spanning = rank_of_directions(sub, field) == n;
    }
    if (spanning) ++count;
    // next combination in lexicographic order
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == m - n + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return count;
}

mpz_class multiplicity(const std::vector<Direction>& dirs, unsigned n) {
  if (n == 0) throw InvariantViolation("multiplicity: n must be positive");
  if (dirs.size() < n) return 0;
  const unsigned dim = dirs[0].dim();
  ClassList cl = group(dirs);
  if (n == 2) return grouped2(cl);
  if (n == 3 && dim == 3 && cl.total > 24) return grouped3(cl);
  return multiplicity_enumerated(dirs, n);
}

std::vector<JointRecord> find_joints(const Arrangement& arr, unsigned threads) {
  arr.validate();
  const unsigned n = arr.n;
  if (n < 2) throw InvariantViolation("find_joints: dimension must be at least 2");
  auto cm = concurrency_map(arr, threads);
  std::vector<const std::pair<const Point, std::set<std::size_t>>*> entries;
  entries.reserve(cm.size());
  for (const auto& e : cm) entries.push_back(&e);

  auto chunks = parallel_map_chunks<std::vector<JointRecord>>(
      entries.size(), threads, 256,
      [&](std::size_t, std::size_t begin, std::size_t end) {
        std::vector<JointRecord> out;
        for (std::size_t i = begin; i < end; ++i) {
          const Point& pt = entries[i]->first;
          const auto& ids = entries[i]->second;
          if (ids.size() < n) continue;
          std::vector<Direction> expanded;
          std::vector<Direction> distinct;
          std::set<Point, PointLess> seen;
          std::uint64_t K = 0;
          for (auto id : ids) {
            const Direction& d = arr.lines[id].dir;
            std::uint64_t w = arr.weight(id);
            K += w;
            for (std::uint64_t r = 0; r < w; ++r) expanded.push_back(d);
            if (seen.insert(Point(d.c)).second) distinct.push_back(d);
          }
          if (distinct.size() < n) continue;
          if (rank_of_directions(distinct, arr.field) < n) continue;
          JointRecord rec;
          rec.point = pt;
          rec.line_ids.assign(ids.begin(), ids.end());
          rec.K = K;
          rec.N = multiplicity(expanded, n);
          if (rec.N == 0)
            throw InvariantViolation("find_joints: spanning point with zero multiplicity");
          out.push_back(std::move(rec));
        }
        return out;
      });

  std::vector<JointRecord> joints;
  for (auto& c : chunks)
    for (auto& r : c) joints.push_back(std::move(r));
  return joints;
}

std::map<BucketKey, std::vector<JointRecord>> bucket(const std::vector<JointRecord>& joints) {
  std::map<BucketKey, std::vector<JointRecord>> out;
  for (const auto& j : joints) {
    if (j.N <= 0 || j.K == 0) throw InvariantViolation("bucket: empty joint record");
    BucketKey key;
    std::size_t bits = mpz_sizeinbase(j.N.get_mpz_t(), 2);
    key.N_floor = mpz_class(1) << (bits - 1);
    key.k_floor = std::bit_floor(j.K);
    out[key].push_back(j);
  }
  return out;
}

Dec weighted_sum(const std::vector<JointRecord>& joints, unsigned root, int digits) {
  if (root == 0) throw InvariantViolation("weighted_sum: root must be positive");
  if (root == 1) {
    mpz_class s = 0;
    for (const auto& j : joints) s += j.N;
    return Dec::from_int(s, digits);
  }
  int guard = 4;
  for (std::size_t m = joints.size(); m > 0; m /= 10) ++guard;
  const int work = digits + guard;
  mpz_class acc = 0;
  for (const auto& j : joints) acc += Dec::root(j.N, root, work).units;
  // Round to nearest at the target scale: per-term floors lose strictly less
  // than one working ulp each, which the guard digits absorb.
  mpz_class shift = Dec::pow10(guard);
  mpz_class u;
  mpz_class biased = acc + shift / 2;
  mpz_fdiv_q(u.get_mpz_t(), biased.get_mpz_t(), shift.get_mpz_t());
  return Dec{u, digits};
}

namespace {

struct Combined {
  Arrangement arr;
  std::array<std::size_t, 3> offset;  // start index of each collection
};

Combined combine(const Arrangement& a1, const Arrangement& a2, const Arrangement& a3) {
  const Arrangement* as[3] = {&a1, &a2, &a3};
  for (const auto* a : as) {
    a->validate();
    if (a->n != 3) throw InvariantViolation("multijoints: collections must live in F^3");
    if (!(a->field == a1.field))
      throw InvariantViolation("multijoints: collections must share one field");
  }
  Combined c;
  c.arr.field = a1.field;
  c.arr.n = 3;
  bool weighted = a1.weighted() || a2.weighted() || a3.weighted();
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    c.offset[static_cast<std::size_t>(i)] = pos;
    for (std::size_t j = 0; j < as[i]->lines.size(); ++j) {
      c.arr.lines.push_back(as[i]->lines[j]);
      if (weighted) c.arr.weights.push_back(as[i]->weight(j));
    }
    pos += as[i]->lines.size();
  }
  return c;
}

// Ordered cross-triples (one direction instance per collection) that span,
// by enumeration.
mpz_class cross_enumerated(const std::array<std::vector<Direction>, 3>& d) {
  mpz_class count = 0;
  for (const auto& x : d[0])
    for (const auto& y : d[1])
      for (const auto& z : d[2])
        if (spans3(x, y, z)) ++count;
  return count;
}

// Grouped analog: nonspanning cross-triples lie in a plane spanned by a pair
// of the union's classes, with rank-1 triples corrected for multiple planes.
mpz_class cross_grouped(const std::array<std::vector<Direction>, 3>& d) {
  std::map<Point, std::size_t, PointLess> index;
  std::vector<Direction> classes;
  std::vector<std::array<mpz_class, 3>> k;
  for (int i = 0; i < 3; ++i)
    for (const auto& dir : d[static_cast<std::size_t>(i)]) {
      auto [it, fresh] = index.emplace(Point(dir.c), classes.size());
      if (fresh) {
        classes.push_back(dir);
        k.push_back({0, 0, 0});
      }
      k[it->second][static_cast<std::size_t>(i)] += 1;
    }
  mpz_class total = mpz_class(d[0].size()) * mpz_class(d[1].size()) * mpz_class(d[2].size());
  std::map<Point, std::set<std::size_t>, PointLess> planes;
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      auto& members = planes[Point(cross_dir(classes[i], classes[j]).c)];
      members.insert(i);
      members.insert(j);
    }
  std::vector<std::uint64_t> planes_through(classes.size(), 0);
  mpz_class nonspanning = 0;
  for (const auto& plane : planes) {
    std::array<mpz_class, 3> m = {0, 0, 0};
    for (auto c : plane.second) {
      for (int i = 0; i < 3; ++i) m[static_cast<std::size_t>(i)] += k[c][static_cast<std::size_t>(i)];
      ++planes_through[c];
    }
    nonspanning += m[0] * m[1] * m[2];
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    mpz_class prod = k[c][0] * k[c][1] * k[c][2];
    nonspanning += (1 - mpz_class(planes_through[c])) * prod;
  }
  return total - nonspanning;
}

mpz_class cross_count(const std::array<std::vector<Direction>, 3>& d) {
  mpz_class volume = mpz_class(d[0].size()) * mpz_class(d[1].size()) * mpz_class(d[2].size());
  if (volume <= 1000000) return cross_enumerated(d);
  return cross_grouped(d);
}

// Incidence ids of the combined map split back into collection-local ids;
// returns false unless every collection is present.
bool split_ids(const std::set<std::size_t>& ids, const Combined& c,
               std::array<std::vector<std::size_t>, 3>& out) {
  for (auto& v : out) v.clear();
  for (auto id : ids) {
    int g = id >= c.offset[2] ? 2 : (id >= c.offset[1] ? 1 : 0);
    out[static_cast<std::size_t>(g)].push_back(id - c.offset[static_cast<std::size_t>(g)]);
  }
  return !out[0].empty() && !out[1].empty() && !out[2].empty();
}

}  // namespace

std::vector<MultijointRecord> find_multijoints(const Arrangement& a1, const Arrangement& a2,
                                               const Arrangement& a3, unsigned threads) {
  Combined c = combine(a1, a2, a3);
  const Arrangement* as[3] = {&a1, &a2, &a3};
  auto cm = concurrency_map(c.arr, threads);
  std::vector<MultijointRecord> out;
  std::array<std::vector<std::size_t>, 3> local;
  for (const auto& [pt, ids] : cm) {
    if (!split_ids(ids, c, local)) continue;
    std::array<std::vector<Direction>, 3> dirs;
    std::array<std::uint64_t, 3> counts = {0, 0, 0};
    for (std::size_t g = 0; g < 3; ++g)
      for (auto id : local[g]) {
        std::uint64_t w = as[g]->weight(id);
        counts[g] += w;
        for (std::uint64_t r = 0; r < w; ++r) dirs[g].push_back(as[g]->lines[id].dir);
      }
    mpz_class nprime = cross_count(dirs);
    if (nprime == 0) continue;
    MultijointRecord rec;
    rec.point = pt;
    rec.line_ids = local;
    rec.counts = counts;
    rec.Nprime = std::move(nprime);
    out.push_back(std::move(rec));
  }
  return out;
}

Dec coincidence_sum(const Arrangement& a1, const Arrangement& a2, const Arrangement& a3,
                    int digits, unsigned threads) {
  Combined c = combine(a1, a2, a3);
  const Arrangement* as[3] = {&a1, &a2, &a3};
  auto cm = concurrency_map(c.arr, threads);
  int guard = 4;
  for (std::size_t m = cm.size(); m > 0; m /= 10) ++guard;
  const int work = digits + guard;
  mpz_class acc = 0;
  std::array<std::vector<std::size_t>, 3> local;
  for (const auto& entry : cm) {
    if (!split_ids(entry.second, c, local)) continue;
    mpz_class term = 1;
    for (std::size_t g = 0; g < 3; ++g) {
      std::uint64_t n_g = 0;
      for (auto id : local[g]) n_g += as[g]->weight(id);
      term *= mpz_class(n_g);
    }
    acc += Dec::root(term, 2, work).units;
  }
  mpz_class shift = Dec::pow10(guard);
  mpz_class biased = acc + shift / 2;
  mpz_class u;
  mpz_fdiv_q(u.get_mpz_t(), biased.get_mpz_t(), shift.get_mpz_t());
  return Dec{u, digits};
}

}  // namespace jw
