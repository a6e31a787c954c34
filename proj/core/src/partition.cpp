// SPDX-License-Identifier: Apache-2.0

#include "jointwork/partition.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "jointwork/errors.hpp"
#include "jointwork/parallel.hpp"
#include "jointwork/rng.hpp"

namespace jw {
namespace {

int sgn_q(const mpq_class& q) { return mpq_sgn(q.get_mpq_t()); }

int sign_at(const MultiPoly& p, const Point& x) {
  return sgn_q(p.evaluate(x.c).rat_value());
}

unsigned require_rational_sets(const std::vector<std::vector<Point>>& sets) {
  unsigned dim = 0;
  for (const auto& s : sets)
    for (const Point& p : s) {
      if (p.dim() == 0) throw std::invalid_argument("bisect: zero-dimensional point");
      if (!p.c[0].field().is_rational())
        throw std::invalid_argument("bisect: points must be rational");
      if (dim == 0) dim = p.dim();
      if (p.dim() != dim) throw std::invalid_argument("bisect: mixed dimensions");
    }
  return dim;
}

struct SideCount {
  std::size_t pos = 0;
  std::size_t neg = 0;
};

SideCount count_sides(const MultiPoly& p, const std::vector<Point>& pts, unsigned threads) {
  if (pts.empty()) return {};
  const auto partial = parallel_map_chunks<SideCount>(
      pts.size(), threads, 512, [&](std::size_t, std::size_t b, std::size_t e) {
        SideCount c;
        for (std::size_t i = b; i < e; ++i) {
          const int s = sign_at(p, pts[i]);
          if (s > 0) ++c.pos;
          if (s < 0) ++c.neg;
        }
        return c;
      });
  SideCount total;
  for (const SideCount& c : partial) {
    total.pos += c.pos;
    total.neg += c.neg;
  }
  return total;
}

std::uint64_t side_cap(std::size_t size, std::int64_t slack) {
  const std::uint64_t half = (size + 1) / 2;
  return half + static_cast<std::uint64_t>(slack < 0 ? 0 : slack);
}

bool accepts(const MultiPoly& p, const std::vector<std::vector<Point>>& sets,
             const std::vector<std::uint64_t>& caps, unsigned threads) {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const SideCount c = count_sides(p, sets[i], threads);
    if (c.pos > caps[i] || c.neg > caps[i]) return false;
  }
  return true;
}

// Exact split of one set: the hyperplane x_0 = m at the upper-median first
// coordinate leaves at most ceil(S/2) points strictly on either side.
MultiPoly median_split(const FieldDescriptor& f, unsigned n, const std::vector<Point>& pts) {
  MultiPoly x0 = MultiPoly::variable(f, n, 0);
  if (pts.empty()) return x0;
  std::vector<mpq_class> xs;
  xs.reserve(pts.size());
  for (const Point& p : pts) xs.push_back(p.c[0].rat_value());
  const std::size_t k = (pts.size() + 1) / 2 - 1;
  std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k), xs.end());
  return x0 - MultiPoly::constant(f, n, Scalar::from_mpq(f, xs[k]));
}

// Exhaustive planar search over lines through point pairs, first acceptable
// candidate in pair order.
std::optional<MultiPoly> pair_search(const std::vector<std::vector<Point>>& sets,
                                     std::int64_t slack, unsigned threads) {
  std::vector<const Point*> pool;
  for (const auto& s : sets)
    for (const Point& p : s) pool.push_back(&p);
  const std::size_t m = pool.size();
  if (m < 2) return std::nullopt;
  const FieldDescriptor& f = pool[0]->c[0].field();

  std::vector<std::uint64_t> caps;
  caps.reserve(sets.size());
  for (const auto& s : sets) caps.push_back(side_cap(s.size(), slack));

  // Candidate k maps to the pair (i, j) in lexicographic order.
  std::vector<std::size_t> row_offset(m, 0);
  for (std::size_t i = 1; i < m; ++i) row_offset[i] = row_offset[i - 1] + (m - i);
  const std::size_t total = row_offset[m - 1];

  auto line_through = [&](std::size_t k) {
    const std::size_t i =
        static_cast<std::size_t>(std::upper_bound(row_offset.begin(), row_offset.end(), k) -
                                 row_offset.begin()) -
        1;
    const std::size_t j = i + 1 + (k - row_offset[i]);
    const mpq_class& px = pool[i]->c[0].rat_value();
    const mpq_class& py = pool[i]->c[1].rat_value();
    const mpq_class a = pool[j]->c[1].rat_value() - py;
    const mpq_class b = px - pool[j]->c[0].rat_value();
    return std::array<mpq_class, 3>{a, b, -(a * px + b * py)};
  };

  constexpr std::size_t kMiss = static_cast<std::size_t>(-1);
  const auto winners = parallel_map_chunks<std::size_t>(
      total, threads, 256, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
          const auto [ca, cb, cc] = line_through(k);
          if (ca == 0 && cb == 0) continue;
          bool ok = true;
          for (std::size_t si = 0; ok && si < sets.size(); ++si) {
            std::size_t pos = 0, neg = 0;
            for (const Point& p : sets[si]) {
              const int s =
                  sgn_q(ca * p.c[0].rat_value() + cb * p.c[1].rat_value() + cc);
              if (s > 0) ++pos;
              if (s < 0) ++neg;
            }
            ok = pos <= caps[si] && neg <= caps[si];
          }
          if (ok) return k;
        }
        return kMiss;
      });
  for (std::size_t w : winners) {
    if (w == kMiss) continue;
    const auto [a, b, c] = line_through(w);
    MultiPoly out = MultiPoly::variable(f, 2, 0).scaled(Scalar::from_mpq(f, a)) +
                    MultiPoly::variable(f, 2, 1).scaled(Scalar::from_mpq(f, b)) +
                    MultiPoly::constant(f, 2, Scalar::from_mpq(f, c));
    return out;
  }
  return std::nullopt;
}

Scalar round_to_grid(const FieldDescriptor& f, double v) {
  if (!std::isfinite(v)) v = 0.0;
  const double scaled = std::round(v * 4294967296.0);
  mpq_class q(mpz_class(scaled), mpz_class(1) << 32);
  q.canonicalize();
  return Scalar::from_mpq(f, q);
}

// One basis vector of the nullspace of a k x m double matrix, or empty when
// elimination leaves no free column with a usable solution.
std::vector<double> nullspace_vector(std::vector<std::vector<double>> a, std::size_t m) {
  const std::size_t k = a.size();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < k; ++col) {
    std::size_t best = row;
    for (std::size_t r = row + 1; r < k; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[best][col])) best = r;
    if (std::fabs(a[best][col]) < 1e-12) continue;
    std::swap(a[row], a[best]);
    const double inv = 1.0 / a[row][col];
    for (std::size_t c = col; c < m; ++c) a[row][c] *= inv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == row) continue;
      const double factor = a[r][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < m; ++c) a[r][c] -= factor * a[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(m, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::size_t free_col = m;
  for (std::size_t c = 0; c < m; ++c)
    if (!is_pivot[c]) {
      free_col = c;
      break;
    }
  if (free_col == m) return {};
  std::vector<double> z(m, 0.0);
  z[free_col] = 1.0;
  for (std::size_t r = 0; r < pivot_col.size(); ++r) z[pivot_col[r]] = -a[r][free_col];
  return z;
}

// Direction-and-offset search over the Veronese lift: project every set onto
// a candidate coefficient direction, intersect the per-set offset windows,
// and recount exactly before accepting. Failed directions are realigned by
// solving for a direction whose level set passes through each set's current
// median lift. Deterministic for a fixed seed.
MultiPoly lifted_search(const std::vector<std::vector<Point>>& sets, unsigned d, unsigned n,
                        const FieldDescriptor& f, const BisectOptions& opt) {
  const std::vector<Monomial> monos = enumerate_monomials(n, d);
  const std::size_t m = monos.size();  // monos[0] is the constant

  std::vector<std::vector<std::vector<double>>> lifts(sets.size());
  for (std::size_t si = 0; si < sets.size(); ++si) {
    lifts[si].reserve(sets[si].size());
    for (const Point& p : sets[si]) {
      std::vector<double> row(m - 1);
      std::vector<double> coord(n);
      for (unsigned v = 0; v < n; ++v) coord[v] = p.c[v].rat_value().get_d();
      for (std::size_t k = 1; k < m; ++k) {
        double val = 1.0;
        for (unsigned v = 0; v < n; ++v)
          for (std::uint32_t e = 0; e < monos[k].e[v]; ++e) val *= coord[v];
        row[k - 1] = val;
      }
      lifts[si].push_back(std::move(row));
    }
  }

  // Default slack widens in stages; an explicit slack is used as given.
  std::vector<std::int64_t> divisors;
  if (opt.slack >= 0) divisors.push_back(0);
  else divisors.insert(divisors.end(), {20, 10, 7});

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> proj;
  std::vector<std::vector<double>> medians(sets.size());

  for (std::int64_t div : divisors) {
    std::vector<std::uint64_t> caps;
    caps.reserve(sets.size());
    for (const auto& s : sets) {
      const std::uint64_t extra = opt.slack >= 0
                                      ? static_cast<std::uint64_t>(opt.slack)
                                      : (s.size() + static_cast<std::size_t>(div) - 1) /
                                            static_cast<std::size_t>(div);
      caps.push_back((s.size() + 1) / 2 + extra);
    }

    Rng rng(opt.seed);
    for (unsigned r = 0; r < opt.restarts; ++r) {
      std::vector<double> w(m - 1, 0.0);
      if (r < m - 1) {
        w[r] = 1.0;  // axis passes first: pure monomial sweeps
      } else {
        double norm = 0.0;
        while (norm < 1e-3) {
          norm = 0.0;
          for (double& c : w) {
            c = 2.0 * rng.unit() - 1.0;
            norm += c * c;
          }
          norm = std::sqrt(norm);
        }
        for (double& c : w) c /= norm;
      }

      for (unsigned round = 0; round < 3; ++round) {
        double lo = -inf, hi = inf;
        for (std::size_t si = 0; si < sets.size(); ++si) {
          const std::size_t sz = lifts[si].size();
          medians[si].clear();
          if (sz == 0) continue;
          proj.clear();
          proj.reserve(sz);
          for (const auto& row : lifts[si]) {
            double v = 0.0;
            for (std::size_t k = 0; k + 1 < m; ++k) v += w[k] * row[k];
            proj.push_back(v);
          }
          std::vector<std::size_t> order(sz);
          for (std::size_t i = 0; i < sz; ++i) order[i] = i;
          std::sort(order.begin(), order.end(),
                    [&](std::size_t a, std::size_t b) { return proj[a] < proj[b]; });
          medians[si] = lifts[si][order[(sz - 1) / 2]];
          if (sz > caps[si]) {
            lo = std::max(lo, proj[order[sz - 1 - caps[si]]]);
            hi = std::min(hi, proj[order[caps[si]]]);
          }
        }

        if (lo <= hi) {
          double t = 0.0;
          if (std::isfinite(lo) && std::isfinite(hi)) t = 0.5 * (lo + hi);
          else if (std::isfinite(lo)) t = lo + 1.0;
          else if (std::isfinite(hi)) t = hi - 1.0;

          MultiPoly cand = MultiPoly::constant(f, n, round_to_grid(f, -t));
          for (std::size_t k = 1; k < m; ++k) {
            if (w[k - 1] == 0.0) continue;
            cand.add_term(monos[k], round_to_grid(f, w[k - 1]));
          }
          bool nonconst = false;
          for (const auto& [mono, c] : cand.terms())
            if (mono.degree() > 0 && !c.is_zero()) nonconst = true;
          if (nonconst && accepts(cand, sets, caps, opt.threads)) return cand;
        }

        // Realign: a direction and offset whose level set hits every set's
        // median lift, from the nullspace of the stacked median rows.
        std::vector<std::vector<double>> rows;
        for (const auto& med : medians)
          if (!med.empty()) {
            rows.push_back(med);
            rows.back().push_back(-1.0);  // offset column
          }
        if (rows.empty() || rows.size() >= m) break;
        std::vector<double> z = nullspace_vector(std::move(rows), m);
        if (z.empty()) break;
        double norm = 0.0;
        for (std::size_t k = 0; k + 1 < m; ++k) norm += z[k] * z[k];
        if (norm < 1e-18) break;
        norm = std::sqrt(norm);
        bool moved = false;
        for (std::size_t k = 0; k + 1 < m; ++k) {
          const double c = z[k] / norm;
          if (std::fabs(c - w[k]) > 1e-12) moved = true;
          w[k] = c;
        }
        if (!moved) break;
      }
    }
  }
  throw SearchFailed("ham_sandwich_bisect: no balanced polynomial within the restart budget");
}

}  // namespace

MultiPoly ham_sandwich_bisect(const std::vector<std::vector<Point>>& sets, unsigned d,
                              const BisectOptions& opt) {
  if (d < 1) throw std::invalid_argument("ham_sandwich_bisect: degree must be positive");
  const unsigned n = require_rational_sets(sets);
  if (n == 0) throw std::invalid_argument("ham_sandwich_bisect: no points to bisect");
  const FieldDescriptor f = FieldDescriptor::rat();
  if (monomial_count(n, d) - 1 < static_cast<long>(sets.size()))
    throw std::invalid_argument("ham_sandwich_bisect: too many sets for the degree");

  if (sets.size() == 1) {
    MultiPoly p = median_split(f, n, sets[0]);
    const std::vector<std::uint64_t> caps{side_cap(sets[0].size(), opt.slack)};
    if (!accepts(p, sets, caps, opt.threads))
      throw InvariantViolation("ham_sandwich_bisect: median split failed its own count");
    return p;
  }

  std::size_t pooled = 0;
  for (const auto& s : sets) pooled += s.size();
  if (d == 1 && n == 2 && pooled <= kPairSearchPointCap) {
    auto hit = pair_search(sets, opt.slack < 0 ? 0 : opt.slack, opt.threads);
    if (hit) return *hit;
    // Degenerate layouts fall through to the lifted search.
  }
  return lifted_search(sets, d, n, f, opt);
}

PartitionResult gk_partition(const std::vector<Point>& points, unsigned d,
                             const PartitionOptions& opt) {
  if (d < 2) throw std::invalid_argument("gk_partition: degree must exceed one");
  PartitionResult out;
  if (points.empty()) return out;
  const std::vector<std::vector<Point>> probe{points};
  const unsigned n = require_rational_sets(probe);

  mpz_class target;
  mpz_ui_pow_ui(target.get_mpz_t(), d, n);

  std::map<CellId, std::vector<std::size_t>> live;
  {
    std::vector<std::size_t> all(points.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    live.emplace(CellId{}, std::move(all));
  }
  std::vector<std::size_t> zero_idx;
  std::vector<MultiPoly> factors;
  unsigned total = 0;
  Rng master(opt.seed);

  while (!live.empty()) {
    if ((mpz_class(1) << factors.size()) >= target) break;
    unsigned dj = 1;
    if (factors.size() >= 2)
      while (monomial_count(n, dj) - 1 < static_cast<long>(live.size())) ++dj;
    if (total + dj > d) break;

    std::vector<std::vector<Point>> sets;
    sets.reserve(live.size());
    for (const auto& [id, idxs] : live) {
      std::vector<Point> pts;
      pts.reserve(idxs.size());
      for (std::size_t i : idxs) pts.push_back(points[i]);
      sets.push_back(std::move(pts));
    }
    BisectOptions bo{opt.slack, master.next(), opt.restarts, opt.threads};
    MultiPoly pj = ham_sandwich_bisect(sets, dj, bo);

    std::map<CellId, std::vector<std::size_t>> next;
    for (const auto& [id, idxs] : live) {
      for (std::size_t i : idxs) {
        const int s = sign_at(pj, points[i]);
        if (s == 0) {
          zero_idx.push_back(i);
          continue;
        }
        CellId nid = id;
        nid.signs.push_back(s > 0 ? 1 : -1);
        next[nid].push_back(i);
      }
    }
    live = std::move(next);
    factors.push_back(std::move(pj));
    total += dj;
  }

  const std::size_t J = factors.size();
  std::size_t covered = zero_idx.size();
  for (const auto& [id, idxs] : live) covered += idxs.size();
  if (covered != points.size())
    throw InvariantViolation("gk_partition: a point escaped the classification");
  if (!live.empty() && (mpz_class(1) << (J + n)) < target)
    throw BoundViolation("gk_partition: the degree budget cannot reach the cell target");
  const mpz_class cell_cap = mpz_class(opt.cell_constant) *
                             static_cast<unsigned long>(points.size());
  for (const auto& [id, idxs] : live)
    if (mpz_class(static_cast<unsigned long>(idxs.size())) << J > cell_cap)
      throw BoundViolation("gk_partition: a cell exceeds the configured bound");

  out.poly.factors = std::move(factors);
  out.poly.J = J;
  out.poly.total_degree = total;
  for (const auto& [id, idxs] : live) {
    auto& pts = out.cells[id];
    pts.reserve(idxs.size());
    for (std::size_t i : idxs) pts.push_back(points[i]);
  }
  std::sort(zero_idx.begin(), zero_idx.end());
  out.on_zero_set.reserve(zero_idx.size());
  for (std::size_t i : zero_idx) out.on_zero_set.push_back(points[i]);
  return out;
}

namespace {

int upoly_sign(const UniPoly& p, const Scalar& t) {
  if (p.is_zero()) return 0;
  return sgn_q(p.evaluate(t).rat_value());
}

std::vector<UniPoly> sturm_chain(const UniPoly& sf) {
  std::vector<UniPoly> chain{sf, unipoly_derivative(sf)};
  while (!chain.back().is_zero()) {
    const auto& a = chain[chain.size() - 2];
    const auto& b = chain.back();
    UniPoly rem = unipoly_divmod(a, b).second;
    chain.push_back(rem.scaled(Scalar::from_int(sf.field(), -1)));
  }
  chain.pop_back();
  return chain;
}

int variations(const std::vector<UniPoly>& chain, const Scalar& t) {
  int count = 0, prev = 0;
  for (const UniPoly& p : chain) {
    const int s = upoly_sign(p, t);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

}  // namespace

std::size_t line_cell_crossings(const Line& line, const PartitionResult& result) {
  const auto& factors = result.poly.factors;
  const FieldDescriptor f = FieldDescriptor::rat();
  if (line.base.dim() == 0 || !line.base.c[0].field().is_rational())
    throw std::invalid_argument("line_cell_crossings: rational lines only");
  if (!factors.empty() && factors[0].nvars() != line.base.dim())
    throw std::invalid_argument("line_cell_crossings: dimension mismatch");

  std::vector<UniPoly> restricted;
  restricted.reserve(factors.size());
  UniPoly prod = UniPoly::constant(f, Scalar::one(f));
  for (const MultiPoly& factor : factors) {
    UniPoly u = restrict_to_line(factor, line.base.c, line.dir.c);
    if (u.is_zero())
      throw std::invalid_argument("line_cell_crossings: the line lies in the zero set");
    prod = prod * u;
    restricted.push_back(std::move(u));
  }

  // Sample points: one per open interval between consecutive distinct real
  // roots of the product. Both ends of every isolating interval are kept off
  // the roots, so interval endpoints are valid samples.
  std::vector<Scalar> samples;
  const UniPoly sf = unipoly_square_free(prod);
  if (sf.degree() < 1) {
    samples.push_back(Scalar::zero(f));
  } else {
    mpq_class bound = 0;
    const mpq_class lead = abs(sf.leading().rat_value());
    for (const Scalar& c : sf.coeffs()) {
      const mpq_class v = abs(c.rat_value()) / lead;
      if (v > bound) bound = v;
    }
    bound += 1;
    const auto chain = sturm_chain(sf);
    const Scalar left = Scalar::from_mpq(f, -bound);
    const Scalar right = Scalar::from_mpq(f, bound);

    // Midpoints are nudged toward the low end until they miss every root,
    // so every stored endpoint has a nonzero product value.
    struct Span {
      mpq_class lo, hi;
      int roots;
    };
    std::vector<Span> stack{{-bound, bound, variations(chain, left) - variations(chain, right)}};
    std::vector<std::pair<mpq_class, mpq_class>> isolated;
    while (!stack.empty()) {
      Span s = stack.back();
      stack.pop_back();
      if (s.roots <= 0) continue;
      if (s.roots == 1) {
        isolated.emplace_back(s.lo, s.hi);
        continue;
      }
      mpq_class mid = (s.lo + s.hi) / 2;
      while (upoly_sign(sf, Scalar::from_mpq(f, mid)) == 0) mid = (s.lo + mid) / 2;
      const int here = variations(chain, Scalar::from_mpq(f, mid));
      const int leftc = variations(chain, Scalar::from_mpq(f, s.lo)) - here;
      stack.push_back({s.lo, mid, leftc});
      stack.push_back({mid, s.hi, s.roots - leftc});
    }
    std::sort(isolated.begin(), isolated.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    samples.push_back(Scalar::from_mpq(f, isolated.empty() ? mpq_class(0) : isolated[0].first));
    for (const auto& [lo, hi] : isolated) samples.push_back(Scalar::from_mpq(f, hi));
  }

  std::set<std::vector<std::int8_t>> patterns;
  for (const Scalar& t : samples) {
    std::vector<std::int8_t> sig;
    sig.reserve(restricted.size());
    for (const UniPoly& u : restricted) sig.push_back(upoly_sign(u, t) > 0 ? 1 : -1);
    patterns.insert(std::move(sig));
  }
  return patterns.size();
}

}  // namespace jw
