// SPDX-License-Identifier: Apache-2.0

#include "jointwork/vanishing.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "jointwork/errors.hpp"
#include "jointwork/rng.hpp"

namespace jw {
namespace {

constexpr std::uint64_t kWordPrimeLimit = 1ull << 31;

struct PointsShape {
  unsigned n;
  std::size_t m;
};

PointsShape check_points(const std::vector<Point>& points, const FieldDescriptor& field,
                         std::size_t cap) {
  if (points.empty()) throw std::invalid_argument("vanishing: empty point set");
  const unsigned n = points.front().dim();
  if (n == 0) throw std::invalid_argument("vanishing: zero-dimensional points");
  if (points.size() > cap)
    throw CapExceeded("vanishing: " + std::to_string(points.size()) +
                      " points exceed the cap of " + std::to_string(cap));
  for (const auto& q : points) {
    if (q.dim() != n) throw std::invalid_argument("vanishing: mixed point dimensions");
    for (const auto& s : q.c)
      if (s.field() != field)
        throw std::invalid_argument("vanishing: point scalar from a different field");
  }
  return {n, points.size()};
}

std::vector<std::uint64_t> fp_coords(const Point& q) {
  std::vector<std::uint64_t> r(q.dim());
  for (unsigned j = 0; j < q.dim(); ++j) r[j] = q.c[j].fp_value();
  return r;
}

// Evaluation row q^monos[t] over the word-size prime of `br`.
std::vector<std::uint64_t> fp_row(const Barrett32& br, const std::vector<std::uint64_t>& coords,
                                  const std::vector<Monomial>& monos, unsigned level) {
  const unsigned n = static_cast<unsigned>(coords.size());
  std::vector<std::vector<std::uint64_t>> pw(n);
  for (unsigned j = 0; j < n; ++j) {
    pw[j].resize(level + 1);
    pw[j][0] = 1;
    for (unsigned k = 1; k <= level; ++k) pw[j][k] = br.mul(pw[j][k - 1], coords[j]);
  }
  std::vector<std::uint64_t> row(monos.size());
  for (std::size_t t = 0; t < monos.size(); ++t) {
    std::uint64_t v = pw[0][monos[t].e[0]];
    for (unsigned j = 1; j < n; ++j) v = br.mul(v, pw[j][monos[t].e[j]]);
    row[t] = v;
  }
  return row;
}

// Inverse of the square matrix whose rows are given, by eliminating [W | I].
// Throws InvariantViolation when singular; callers pass certified matrices.
std::vector<std::vector<std::uint64_t>> invert_rows(
    std::uint64_t p, const std::vector<std::vector<std::uint64_t>>& rows) {
  const std::size_t w = rows.size();
  ModEliminator elim(p, 2 * w);
  for (std::size_t i = 0; i < w; ++i) {
    std::vector<std::uint64_t> aug(2 * w, 0);
    std::copy(rows[i].begin(), rows[i].end(), aug.begin());
    aug[w + i] = 1;
    elim.add_row(std::move(aug), i);
  }
  std::vector<std::vector<std::uint64_t>> inv(w, std::vector<std::uint64_t>(w, 0));
  std::size_t seen = 0;
  for (std::size_t i = 0; i < elim.pivot_cols().size(); ++i) {
    const std::size_t c = elim.pivot_cols()[i];
    if (c >= w) throw InvariantViolation("witness matrix is singular");
    const auto& r = elim.pivot_row(i);
    std::copy(r.begin() + static_cast<std::ptrdiff_t>(w), r.end(), inv[c].begin());
    ++seen;
  }
  if (seen != w) throw InvariantViolation("witness matrix is singular");
  return inv;
}

// Scalar power tables for the generic (any-field) paths.
std::vector<std::vector<Scalar>> scalar_pows(const Point& q, unsigned level,
                                             const FieldDescriptor& field) {
  std::vector<std::vector<Scalar>> pw(q.dim());
  for (unsigned j = 0; j < q.dim(); ++j) {
    pw[j].reserve(level + 1);
    pw[j].push_back(Scalar::one(field));
    for (unsigned k = 1; k <= level; ++k) pw[j].push_back(pw[j].back() * q.c[j]);
  }
  return pw;
}

MultiPoly poly_from_scalars(const FieldDescriptor& field, unsigned n,
                            const std::vector<Monomial>& monos, const std::vector<Scalar>& v) {
  MultiPoly f(field, n);
  for (std::size_t t = 0; t < v.size(); ++t)
    if (!v[t].is_zero()) f.add_term(monos[t], v[t]);
  return f;
}

MultiPoly poly_from_words(const FieldDescriptor& field, unsigned n,
                          const std::vector<Monomial>& monos,
                          const std::vector<std::uint64_t>& v) {
  MultiPoly f(field, n);
  for (std::size_t t = 0; t < v.size(); ++t)
    if (v[t] != 0) f.add_term(monos[t], Scalar::from_int(field, static_cast<long long>(v[t])));
  return f;
}

void verify_vanishes(const MultiPoly& f, const std::vector<Point>& points) {
  for (const auto& q : points)
    if (!f.evaluate(q.c).is_zero())
      throw InvariantViolation("vanishing witness fails at a point");
}

// ---------------------------------------------------------------------------
// Rational systems: eliminate residues at a probe prime, lift the candidate
// p-adically, verify exactly.

struct RatPoint {
  std::vector<mpz_class> num, den;  // reduced, den > 0
};

std::vector<RatPoint> split_rationals(const std::vector<Point>& points) {
  std::vector<RatPoint> all;
  all.reserve(points.size());
  for (const auto& q : points) {
    RatPoint r;
    r.num.reserve(q.dim());
    r.den.reserve(q.dim());
    for (const auto& s : q.c) {
      r.num.push_back(s.rat_value().get_num());
      r.den.push_back(s.rat_value().get_den());
    }
    all.push_back(std::move(r));
  }
  return all;
}

// Residue rows at the probe prime. Each row is scaled by prod_j den_j^level,
// which leaves the nullspace unchanged. Returns false when the prime divides
// a denominator.
bool rat_residue_rows(const std::vector<RatPoint>& pts, unsigned n, unsigned level,
                      const std::vector<Monomial>& monos, const Barrett32& br,
                      std::vector<std::vector<std::uint64_t>>& out) {
  out.clear();
  out.reserve(pts.size());
  std::vector<std::vector<std::uint64_t>> ap(n), bp(n);
  for (const auto& q : pts) {
    for (unsigned j = 0; j < n; ++j) {
      const std::uint64_t am = mpz_fdiv_ui(q.num[j].get_mpz_t(), br.p);
      const std::uint64_t bm = mpz_fdiv_ui(q.den[j].get_mpz_t(), br.p);
      if (bm == 0) return false;
      ap[j].assign(level + 1, 1);
      bp[j].assign(level + 1, 1);
      for (unsigned k = 1; k <= level; ++k) {
        ap[j][k] = br.mul(ap[j][k - 1], am);
        bp[j][k] = br.mul(bp[j][k - 1], bm);
      }
    }
    std::vector<std::uint64_t> row(monos.size());
    for (std::size_t t = 0; t < monos.size(); ++t) {
      std::uint64_t v = 1;
      for (unsigned j = 0; j < n; ++j)
        v = br.mul(v, br.mul(ap[j][monos[t].e[j]], bp[j][level - monos[t].e[j]]));
      row[t] = v;
    }
    out.push_back(std::move(row));
  }
  return true;
}

// Exact integer entries of one scaled evaluation row, restricted to columns.
std::vector<mpz_class> int_row_cols(const RatPoint& q, unsigned n, unsigned level,
                                    const std::vector<Monomial>& monos,
                                    const std::vector<std::size_t>& cols) {
  std::vector<std::vector<mpz_class>> az(n), bz(n);
  for (unsigned j = 0; j < n; ++j) {
    az[j].assign(level + 1, 1);
    bz[j].assign(level + 1, 1);
    for (unsigned k = 1; k <= level; ++k) {
      az[j][k] = az[j][k - 1] * q.num[j];
      bz[j][k] = bz[j][k - 1] * q.den[j];
    }
  }
  std::vector<mpz_class> vals;
  vals.reserve(cols.size());
  for (std::size_t c : cols) {
    mpz_class v = 1;
    for (unsigned j = 0; j < n; ++j) v *= az[j][monos[c].e[j]] * bz[j][level - monos[c].e[j]];
    vals.push_back(std::move(v));
  }
  return vals;
}

// Lift the canonical residue nullvector to the rationals: solve the square
// pivot subsystem exactly, set the first free coordinate to 1, and verify
// the assembled polynomial at every point. nullopt means the probe prime
// was inconclusive.
std::optional<MultiPoly> lift_candidate(const std::vector<Point>& points,
                                        const std::vector<RatPoint>& rpts,
                                        const FieldDescriptor& field, unsigned n, unsigned level,
                                        const std::vector<Monomial>& monos,
                                        const ModEliminator& elim, std::uint64_t p) {
  const auto& pcols = elim.pivot_cols();
  const auto& tags = elim.pivot_tags();
  const std::size_t r = elim.rank();
  const std::size_t width = elim.cols();
  std::vector<char> is_pivot(width, 0);
  for (std::size_t c : pcols) is_pivot[c] = 1;
  std::size_t f0 = 0;
  while (f0 < width && is_pivot[f0]) ++f0;
  if (f0 == width) throw InvariantViolation("nullvector requested from a full-rank system");

  std::vector<std::size_t> wanted = pcols;
  wanted.push_back(f0);
  std::vector<mpz_class> A(r * r), b(r);
  for (std::size_t i = 0; i < r; ++i) {
    auto vals = int_row_cols(rpts[tags[i]], n, level, monos, wanted);
    for (std::size_t j = 0; j < r; ++j) A[i * r + j] = std::move(vals[j]);
    b[i] = -vals[r];
  }
  auto sol = dixon_solve(A, r, b, p);
  if (!sol) return std::nullopt;

  MultiPoly f(field, n);
  f.add_term(monos[f0], Scalar::one(field));
  for (std::size_t i = 0; i < r; ++i)
    if ((*sol)[i] != 0) f.add_term(monos[pcols[i]], Scalar::from_mpq(field, (*sol)[i]));
  for (const auto& q : points)
    if (!f.evaluate(q.c).is_zero()) return std::nullopt;
  return f;
}

// Any-field fallback: dense Scalar elimination level by level.
MinDegreeResult generic_min_degree(const std::vector<Point>& points,
                                   const FieldDescriptor& field, unsigned n) {
  const std::size_t m = points.size();
  for (unsigned d = 1;; ++d) {
    const auto monos = enumerate_monomials(n, d);
    Matrix M(field, m, monos.size());
    for (std::size_t i = 0; i < m; ++i) {
      const auto pw = scalar_pows(points[i], d, field);
      for (std::size_t t = 0; t < monos.size(); ++t) {
        Scalar v = pw[0][monos[t].e[0]];
        for (unsigned j = 1; j < n; ++j) v = v * pw[j][monos[t].e[j]];
        M.at(i, t) = std::move(v);
      }
    }
    const auto basis = nullspace(M);
    if (!basis.empty()) {
      MultiPoly f = poly_from_scalars(field, n, monos, basis.front());
      if (f.degree() != d) throw InvariantViolation("minimal witness has the wrong degree");
      verify_vanishes(f, points);
      return {d, std::move(f)};
    }
  }
}

// Dense Scalar path for the truncated system; any field.
VanishingResult generic_dvir(const std::vector<Point>& points, const FieldDescriptor& field,
                             unsigned n, unsigned d, const std::vector<Monomial>& monos) {
  const std::size_t m = points.size();
  const std::size_t width = monos.size();
  Matrix M(field, m, width);
  for (std::size_t i = 0; i < m; ++i) {
    const auto pw = scalar_pows(points[i], d, field);
    for (std::size_t t = 0; t < width; ++t) {
      Scalar v = pw[0][monos[t].e[0]];
      for (unsigned j = 1; j < n; ++j) v = v * pw[j][monos[t].e[j]];
      M.at(i, t) = std::move(v);
    }
  }
  const auto basis = nullspace(M);
  if (basis.empty()) throw InvariantViolation("truncated system lost its nullvector");
  MultiPoly f = poly_from_scalars(field, n, monos, basis.front());
  verify_vanishes(f, points);
  return {std::move(f), d, width, basis.size()};
}

MinDegreeResult rational_min_degree(const std::vector<Point>& points,
                                    const FieldDescriptor& field, unsigned n) {
  if (points.size() > kVanishingRationalCap)
    throw CapExceeded("vanishing: rational systems are capped at " +
                      std::to_string(kVanishingRationalCap) + " points");
  const auto rpts = split_rationals(points);
  for (unsigned attempt = 0; attempt < 3; ++attempt) {
    const std::uint64_t p = probe_prime(attempt);
    Barrett32 br(p);
    bool retry = false;
    for (unsigned level = 1; !retry; ++level) {
      const auto monos = enumerate_monomials(n, level);
      std::vector<std::vector<std::uint64_t>> rows;
      if (!rat_residue_rows(rpts, n, level, monos, br, rows)) break;
      ModEliminator elim(p, monos.size());
      for (std::size_t i = 0; i < rows.size() && !elim.full_rank(); ++i)
        elim.add_row(std::move(rows[i]), i);
      // Full residue rank certifies full rational rank: no witness here.
      if (elim.full_rank()) continue;
      auto f = lift_candidate(points, rpts, field, n, level, monos, elim, p);
      if (f) {
        if (f->degree() != level) throw InvariantViolation("lifted witness has the wrong degree");
        return {level, std::move(*f)};
      }
      retry = true;
    }
  }
  if (points.size() <= 400) return generic_min_degree(points, field, n);
  throw SearchFailed("vanishing: every probe prime was inconclusive");
}

}  // namespace

// ---------------------------------------------------------------------------
// MinDegreeTracker

MinDegreeTracker::MinDegreeTracker(const std::vector<Point>& points,
                                   const FieldDescriptor& field, std::uint64_t seed)
    : field_(field) {
  if (!field.is_prime() || field.p() >= kWordPrimeLimit)
    throw std::invalid_argument("MinDegreeTracker needs a prime field below 2^31");
  const auto shape = check_points(points, field, kVanishingPointCap);
  n_ = shape.n;
  m_ = shape.m;
  br_ = Barrett32(field.p());
  alive_.assign(m_, 1);
  alive_count_ = m_;
  slot_of_.assign(m_, npos);
  {
    const auto perm = Rng(seed ^ 0x746361726b65ull)
                          .sample(static_cast<std::uint32_t>(m_), static_cast<std::uint32_t>(m_));
    order_.assign(perm.begin(), perm.end());
  }
  std::vector<std::vector<std::uint64_t>> coords(m_);
  for (std::size_t i = 0; i < m_; ++i) coords[i] = fp_coords(points[i]);

  std::vector<std::size_t> prev_tags;
  for (unsigned level = 0;; ++level) {
    build_rows(level, coords);
    ModEliminator elim = run_level(level, true);
    if (elim.full_rank()) {
      prev_tags = elim.pivot_tags();
      continue;
    }
    d_ = level;
    nullvec_ = elim.canonical_nullvector();
    if (level > 0) adopt_witness(prev_tags, level - 1);
    break;
  }
}

void MinDegreeTracker::build_rows(unsigned level,
                                  const std::vector<std::vector<std::uint64_t>>& coords) {
  monos_ = enumerate_monomials(n_, level);
  cols_at_.resize(level + 1);
  for (unsigned l = 0; l <= level; ++l) cols_at_[l] = monomial_count(n_, l).get_ui();
  rows_.assign(m_, {});
  for (std::size_t i = 0; i < m_; ++i) rows_[i] = fp_row(br_, coords[i], monos_, level);
}

ModEliminator MinDegreeTracker::run_level(unsigned level, bool early_exit) const {
  const std::size_t w = cols_at_[level];
  ModEliminator elim(br_.p, w);
  for (std::size_t idx : order_) {
    if (!alive_[idx]) continue;
    elim.add_row(std::vector<std::uint64_t>(rows_[idx].begin(),
                                            rows_[idx].begin() + static_cast<std::ptrdiff_t>(w)),
                 idx);
    if (early_exit && elim.full_rank()) break;
  }
  return elim;
}

void MinDegreeTracker::adopt_witness(const std::vector<std::size_t>& tags, unsigned level) {
  const std::size_t w = cols_at_[level];
  if (tags.size() != w) throw InvariantViolation("witness tag count mismatch");
  tags_ = tags;
  std::fill(slot_of_.begin(), slot_of_.end(), npos);
  wrows_.assign(w, {});
  for (std::size_t k = 0; k < w; ++k) {
    wrows_[k].assign(rows_[tags_[k]].begin(),
                     rows_[tags_[k]].begin() + static_cast<std::ptrdiff_t>(w));
    slot_of_[tags_[k]] = k;
  }
  winv_ = invert_rows(br_.p, wrows_);
}

bool MinDegreeTracker::try_replace(std::size_t slot) {
  const std::size_t w = wrows_.size();
  std::vector<std::uint64_t> a(w);  // column `slot` of the inverse
  for (std::size_t i = 0; i < w; ++i) a[i] = winv_[i][slot];
  const auto& wk = wrows_[slot];
  for (std::size_t cand : order_) {
    if (!alive_[cand] || slot_of_[cand] != npos) continue;
    const auto& row = rows_[cand];
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < w; ++i) c = br_.add(c, br_.mul(br_.sub(row[i], wk[i]), a[i]));
    if (c == 0) continue;
    // Sherman-Morrison: W' = W + e_slot (row - w_slot)^T stays invertible.
    std::vector<std::uint64_t> u(w), bvec(w, 0);
    for (std::size_t i = 0; i < w; ++i) u[i] = br_.sub(row[i], wk[i]);
    for (std::size_t i = 0; i < w; ++i) {
      if (u[i] == 0) continue;
      const auto& wi = winv_[i];
      for (std::size_t j = 0; j < w; ++j) bvec[j] = br_.add(bvec[j], br_.mul(u[i], wi[j]));
    }
    const std::uint64_t cinv = invmod_u64(c, br_.p);
    for (std::size_t i = 0; i < w; ++i) {
      const std::uint64_t s = br_.mul(a[i], cinv);
      if (s == 0) continue;
      auto& wi = winv_[i];
      for (std::size_t j = 0; j < w; ++j) wi[j] = br_.sub(wi[j], br_.mul(s, bvec[j]));
    }
    wrows_[slot].assign(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(w));
    tags_[slot] = cand;
    slot_of_[cand] = slot;
    return true;
  }
  return false;
}

void MinDegreeTracker::descend() {
  unsigned cand = d_ - 1;  // certified deficient by the failed exchange
  std::optional<ModEliminator> cand_elim;
  for (;;) {
    if (cand == 0) throw InvariantViolation("vanishing degree search hit level 0");
    ModEliminator lower = run_level(cand - 1, true);
    if (lower.full_rank()) {
      adopt_witness(lower.pivot_tags(), cand - 1);
      break;
    }
    cand_elim.emplace(std::move(lower));
    --cand;
  }
  d_ = cand;
  ModEliminator top = cand_elim ? std::move(*cand_elim) : run_level(cand, false);
  if (top.full_rank()) throw InvariantViolation("deficient level regained full rank");
  nullvec_ = top.canonical_nullvector();
}

void MinDegreeTracker::remove(std::size_t idx) {
  if (idx >= m_ || !alive_[idx]) throw std::invalid_argument("remove: point is not live");
  alive_[idx] = 0;
  --alive_count_;
  if (alive_count_ == 0) {
    d_ = 0;
    tags_.clear();
    wrows_.clear();
    winv_.clear();
    std::fill(slot_of_.begin(), slot_of_.end(), npos);
    nullvec_.assign(1, 1);
    return;
  }
  const std::size_t slot = slot_of_[idx];
  if (slot == npos) return;
  slot_of_[idx] = npos;
  if (!try_replace(slot)) descend();
}

MultiPoly MinDegreeTracker::poly() const {
  MultiPoly f(field_, n_);
  for (std::size_t t = 0; t < nullvec_.size(); ++t)
    if (nullvec_[t] != 0)
      f.add_term(monos_[t], Scalar::from_int(field_, static_cast<long long>(nullvec_[t])));
  return f;
}

// ---------------------------------------------------------------------------
// Free functions.

MinDegreeResult minimal_vanishing_degree(const std::vector<Point>& points,
                                         const FieldDescriptor& field) {
  const auto shape = check_points(points, field, kVanishingPointCap);
  if (field.is_prime() && field.p() < kWordPrimeLimit) {
    MinDegreeTracker t(points, field);
    MinDegreeResult out{t.degree(), t.poly()};
    if (out.poly.degree() != out.degree)
      throw InvariantViolation("minimal witness has the wrong degree");
    verify_vanishes(out.poly, points);
    return out;
  }
  if (field.is_rational()) return rational_min_degree(points, field, shape.n);
  if (shape.m > kVanishingWidePrimeCap)
    throw CapExceeded("vanishing: wide-prime systems are capped at " +
                      std::to_string(kVanishingWidePrimeCap) + " points");
  return generic_min_degree(points, field, shape.n);
}

VanishingResult dvir_polynomial(const std::vector<Point>& points, const FieldDescriptor& field) {
  const auto shape = check_points(points, field, kVanishingPointCap);
  const unsigned n = shape.n;
  const std::size_t m = shape.m;

  mpz_class bound;
  mpz_fac_ui(bound.get_mpz_t(), n);
  bound *= static_cast<unsigned long>(m);
  mpz_class root;
  mpz_root(root.get_mpz_t(), bound.get_mpz_t(), n);
  const unsigned d = static_cast<unsigned>(root.get_ui()) + 1;
  if (monomial_count(n, d) <= static_cast<long>(m))
    throw InvariantViolation("degree bound fails the dimension count");

  auto monos = enumerate_monomials(n, d);
  const std::size_t width = m + 1;
  monos.resize(width);

  if (field.is_prime() && field.p() < kWordPrimeLimit) {
    Barrett32 br(field.p());
    ModEliminator elim(field.p(), width);
    for (std::size_t i = 0; i < m; ++i)
      elim.add_row(fp_row(br, fp_coords(points[i]), monos, d), i);
    const auto nv = elim.canonical_nullvector();
    // Exact residue evaluation of the witness at every point.
    for (std::size_t i = 0; i < m; ++i)
      if (mod_dot(br, fp_row(br, fp_coords(points[i]), monos, d), nv) != 0)
        throw InvariantViolation("vanishing witness fails at a point");
    return {poly_from_words(field, n, monos, nv), d, width, width - elim.rank()};
  }
  if (field.is_rational()) {
    if (m > kVanishingRationalCap)
      throw CapExceeded("vanishing: rational systems are capped at " +
                        std::to_string(kVanishingRationalCap) + " points");
    const auto rpts = split_rationals(points);
    for (unsigned attempt = 0; attempt < 3; ++attempt) {
      const std::uint64_t p = probe_prime(attempt);
      Barrett32 br(p);
      std::vector<std::vector<std::uint64_t>> rows;
      if (!rat_residue_rows(rpts, n, d, monos, br, rows)) continue;
      ModEliminator elim(p, width);
      for (std::size_t i = 0; i < m; ++i) elim.add_row(std::move(rows[i]), i);
      auto f = lift_candidate(points, rpts, field, n, d, monos, elim, p);
      if (f) return {std::move(*f), d, width, width - elim.rank()};
    }
    if (m <= 400) return generic_dvir(points, field, n, d, monos);
    throw SearchFailed("vanishing: every probe prime was inconclusive");
  }
  if (m > kVanishingWidePrimeCap)
    throw CapExceeded("vanishing: wide-prime systems are capped at " +
                      std::to_string(kVanishingWidePrimeCap) + " points");
  return generic_dvir(points, field, n, d, monos);
}

mpz_class exhaustive_zero_count(const MultiPoly& f) {
  const FieldDescriptor& field = f.field();
  if (!field.is_prime())
    throw std::invalid_argument("exhaustive zero count needs a prime field");
  const unsigned n = f.nvars();
  if (n == 0) throw std::invalid_argument("exhaustive zero count needs at least one variable");
  const std::uint64_t p = field.p();
  mpz_class cube = 1;
  for (unsigned j = 0; j < n; ++j) {
    cube *= static_cast<unsigned long>(p);
    if (cube > 2000000) throw CapExceeded("exhaustive zero count capped at 2e6 cube points");
  }
  if (f.is_zero()) return cube;

  struct FlatTerm {
    std::vector<std::uint32_t> e;
    std::uint64_t c;
  };
  std::vector<FlatTerm> terms;
  terms.reserve(f.terms().size());
  for (const auto& tc : f.terms()) terms.push_back({tc.first.e, tc.second.fp_value()});

  Barrett32 br(p);
  const unsigned last = n - 1;
  const auto dlast = static_cast<std::size_t>(f.degree_in(last));
  std::vector<std::uint32_t> maxe(n, 0);
  for (const auto& t : terms)
    for (unsigned j = 0; j < n; ++j) maxe[j] = std::max(maxe[j], t.e[j]);

  std::vector<std::uint64_t> coeffs(dlast + 1);
  std::vector<std::uint64_t> asg(n - 1, 0);
  std::vector<std::vector<std::uint64_t>> pw(n - 1);
  std::uint64_t count = 0;
  for (;;) {
    for (unsigned j = 0; j + 1 < n; ++j) {
      pw[j].assign(maxe[j] + 1, 1);
      for (std::uint32_t k = 1; k <= maxe[j]; ++k) pw[j][k] = br.mul(pw[j][k - 1], asg[j]);
    }
    std::fill(coeffs.begin(), coeffs.end(), 0);
    for (const auto& t : terms) {
      std::uint64_t v = t.c;
      for (unsigned j = 0; j + 1 < n; ++j) v = br.mul(v, pw[j][t.e[j]]);
      coeffs[t.e[last]] = br.add(coeffs[t.e[last]], v);
    }
    if (std::all_of(coeffs.begin(), coeffs.end(), [](std::uint64_t x) { return x == 0; })) {
      count += p;
    } else {
      for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t v = 0;
        for (std::size_t k = dlast + 1; k-- > 0;) v = br.add(br.mul(v, x), coeffs[k]);
        if (v == 0) ++count;
      }
    }
    unsigned j = 0;
    while (j + 1 < n && ++asg[j] == p) asg[j++] = 0;
    if (j + 1 >= n) break;
  }
  return mpz_class(static_cast<unsigned long>(count));
}

}  // namespace jw
