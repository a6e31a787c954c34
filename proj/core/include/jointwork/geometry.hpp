// SPDX-License-Identifier: Apache-2.0
// Points, canonical lines, and arrangements in F^n. Lines are stored in a
// canonical form that makes value equality coincide with point-set equality:
// the direction's first nonzero coordinate is 1 and the base point has
// coordinate 0 at that pivot index. Everything compares exactly; there are
// no epsilon comparisons anywhere.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "jointwork/field.hpp"

namespace jw {

struct Point {
  std::vector<Scalar> c;

  Point() = default;
  explicit Point(std::vector<Scalar> coords) : c(std::move(coords)) {}
  unsigned dim() const { return static_cast<unsigned>(c.size()); }
  bool operator==(const Point& o) const { return c == o.c; }
  bool operator!=(const Point& o) const { return !(*this == o); }
  std::string str() const;
};

// Lexicographic order on canonical scalar values; the deterministic key
// order for every point-indexed map in the library.
struct PointLess {
  bool operator()(const Point& a, const Point& b) const;
};

struct Direction {
  std::vector<Scalar> c;  // first nonzero coordinate is 1

  unsigned dim() const { return static_cast<unsigned>(c.size()); }
  unsigned pivot() const;  // index of the leading 1
  bool operator==(const Direction& o) const { return c == o.c; }
  bool operator!=(const Direction& o) const { return !(*this == o); }
  std::string str() const;
};

// Scale an arbitrary nonzero vector to its canonical projective
// representative. Throws on the zero vector.
Direction canonicalize_direction(std::vector<Scalar> v);

struct Line {
  Point base;
  Direction dir;

  unsigned dim() const { return base.dim(); }
  bool operator==(const Line& o) const { return base == o.base && dir == o.dir; }
  bool operator!=(const Line& o) const { return !(*this == o); }
  std::string str() const;
};

struct LineLess {
  bool operator()(const Line& a, const Line& b) const;
};

// The unique canonical representative of the line through `base` with
// direction `dir`; idempotent. Throws on a zero direction.
Line canonicalize_line(const Point& base, const std::vector<Scalar>& dir);

bool point_on_line(const Point& p, const Line& l);

// Point of l at parameter t.
Point line_at(const Line& l, const Scalar& t);

struct Arrangement {
  FieldDescriptor field = FieldDescriptor::rat();
  unsigned n = 0;
  std::vector<Line> lines;
  std::vector<std::uint64_t> weights;  // empty means all 1

  std::uint64_t weight(std::size_t i) const { return weights.empty() ? 1 : weights[i]; }
  bool weighted() const { return !weights.empty(); }
  // Checks dimensions, fields, canonical form, and that duplicate canonical
  // lines appear only when weights are present. Throws InvariantViolation.
  void validate() const;
};

enum class IntersectKind { point, disjoint, coincident };
struct Intersection {
  IntersectKind kind;
  Point at;  // meaningful only when kind == point
};

Intersection line_intersection(const Line& l1, const Line& l2);

std::size_t rank_of_directions(const std::vector<Direction>& dirs,
                               const FieldDescriptor& field);

// Every point lying on >= 2 lines, with its full set of incident line
// indices. Deterministic: keyed by PointLess. The pair loop is sharded
// across workers; `threads` 0 picks the hardware default.
std::map<Point, std::set<std::size_t>, PointLess> concurrency_map(
    const Arrangement& arr, unsigned threads = 0);

}  // namespace jw
