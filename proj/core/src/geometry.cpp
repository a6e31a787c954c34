// SPDX-License-Identifier: Apache-2.0

#include "jointwork/geometry.hpp"

#include <mutex>
#include <stdexcept>

#include "jointwork/errors.hpp"
#include "jointwork/linalg.hpp"
#include "jointwork/parallel.hpp"

namespace jw {

std::string Point::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += c[i].str();
  }
  return s + ")";
}

bool PointLess::operator()(const Point& a, const Point& b) const {
  if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    int d = a.c[i].cmp(b.c[i]);
    if (d) return d < 0;
  }
  return false;
}

unsigned Direction::pivot() const {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) return static_cast<unsigned>(i);
  throw InvariantViolation("zero direction");
}

std::string Direction::str() const { return Point(c).str(); }

Direction canonicalize_direction(std::vector<Scalar> v) {
  std::size_t piv = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) {
      piv = i;
      break;
    }
  }
  if (piv == v.size()) throw std::invalid_argument("zero direction");
  Scalar inv = v[piv].inverse();
  for (auto& x : v) x = x * inv;
  Direction d;
  d.c = std::move(v);
  return d;
}

Line canonicalize_line(const Point& base, const std::vector<Scalar>& dir) {
  if (base.c.size() != dir.size())
    throw std::invalid_argument("canonicalize_line: dimension mismatch");
  Direction d = canonicalize_direction(dir);
  unsigned piv = d.pivot();
  Scalar t = base.c[piv];
  Point b = base;
  for (std::size_t i = 0; i < b.c.size(); ++i) b.c[i] = b.c[i] - t * d.c[i];
  return Line{std::move(b), std::move(d)};
}

bool LineLess::operator()(const Line& a, const Line& b) const {
  PointLess pl;
  if (pl(a.base, b.base)) return true;
  if (pl(b.base, a.base)) return false;
  return pl(Point(a.dir.c), Point(b.dir.c));
}

std::string Line::str() const { return base.str() + "+t*" + dir.str(); }

bool point_on_line(const Point& p, const Line& l) {
  if (p.dim() != l.dim()) return false;
  // base[pivot] = 0 and dir[pivot] = 1, so the parameter is p[pivot].
  const Scalar& t = p.c[l.dir.pivot()];
  for (std::size_t i = 0; i < p.c.size(); ++i)
    if (p.c[i] != l.base.c[i] + t * l.dir.c[i]) return false;
  return true;
}

Point line_at(const Line& l, const Scalar& t) {
  Point p = l.base;
  for (std::size_t i = 0; i < p.c.size(); ++i) p.c[i] = p.c[i] + t * l.dir.c[i];
  return p;
}

void Arrangement::validate() const {
  if (n < 2) throw InvariantViolation("arrangement dimension must be at least 2");
  if (!weights.empty() && weights.size() != lines.size())
    throw InvariantViolation("weight list length mismatch");
  for (std::uint64_t w : weights)
    if (w == 0) throw InvariantViolation("weights must be positive");
  std::set<Line, LineLess> seen;
  for (const Line& l : lines) {
    if (l.dim() != n || l.dir.dim() != n)
      throw InvariantViolation("line dimension mismatch");
    for (const Scalar& s : l.base.c)
      if (s.field() != field) throw InvariantViolation("line field mismatch");
    for (const Scalar& s : l.dir.c)
      if (s.field() != field) throw InvariantViolation("line field mismatch");
    Line canon = canonicalize_line(l.base, l.dir.c);
    if (canon != l) throw InvariantViolation("line not in canonical form: " + l.str());
    if (!seen.insert(l).second && weights.empty())
      throw InvariantViolation("duplicate line without weights: " + l.str());
  }
}

Intersection line_intersection(const Line& l1, const Line& l2) {
  if (l1.dim() != l2.dim())
    throw std::invalid_argument("line_intersection: dimension mismatch");
  const FieldDescriptor& f = l1.base.c.empty() ? FieldDescriptor::rat() : l1.base.c[0].field();
  const unsigned n = l1.dim();

  if (l1.dir == l2.dir)
    return {l1 == l2 ? IntersectKind::coincident : IntersectKind::disjoint, Point{}};

  // Solve t*b1 - s*b2 = v2 - v1 by elimination on the n x 3 augmented system.
  Matrix m(f, n, 3);
  for (unsigned i = 0; i < n; ++i) {
    m.at(i, 0) = l1.dir.c[i];
    m.at(i, 1) = -l2.dir.c[i];
    m.at(i, 2) = l2.base.c[i] - l1.base.c[i];
  }
  std::vector<std::size_t> pivots = rref_in_place(m);
  bool augmented_pivot = !pivots.empty() && pivots.back() == 2;
  if (augmented_pivot) return {IntersectKind::disjoint, Point{}};
  // Distinct canonical directions are independent, so both unknown columns
  // are pivots and the solution is unique.
  Scalar t = m.at(0, 2);
  Point p = line_at(l1, t);
  if (!point_on_line(p, l2)) return {IntersectKind::disjoint, Point{}};
  return {IntersectKind::point, std::move(p)};
}

std::size_t rank_of_directions(const std::vector<Direction>& dirs,
                               const FieldDescriptor& field) {
  if (dirs.empty()) throw std::invalid_argument("rank_of_directions: empty list");
  Matrix m(field, dirs.size(), dirs[0].dim());
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = 0; j < dirs[i].c.size(); ++j) m.at(i, j) = dirs[i].c[j];
  return rank(std::move(m));
}

std::map<Point, std::set<std::size_t>, PointLess> concurrency_map(
    const Arrangement& arr, unsigned threads) {
  const std::size_t L = arr.lines.size();
  using LocalMap = std::map<Point, std::set<std::size_t>, PointLess>;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(L * (L - 1) / 2);
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = i + 1; j < L; ++j) pairs.emplace_back(i, j);

  std::vector<LocalMap> partials = parallel_map_chunks<LocalMap>(
      pairs.size(), threads, 4096,
      [&](std::size_t /*chunk*/, std::size_t begin, std::size_t end) {
        LocalMap local;
        for (std::size_t k = begin; k < end; ++k) {
          auto [i, j] = pairs[k];
          Intersection x = line_intersection(arr.lines[i], arr.lines[j]);
          if (x.kind != IntersectKind::point) continue;
          auto& s = local[x.at];
          s.insert(i);
          s.insert(j);
        }
        return local;
      });

  LocalMap out;
  for (LocalMap& part : partials)
    for (auto& [p, s] : part) out[p].insert(s.begin(), s.end());
  return out;
}

}  // namespace jw
