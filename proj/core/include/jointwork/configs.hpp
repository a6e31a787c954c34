// SPDX-License-Identifier: Apache-2.0
// Deterministic arrangement generators: the extremal families the bounds are
// exercised against, the coplanar counterexample lattice, and seeded random
// arrangements over prime fields.

#pragma once

#include <array>
#include <cstdint>

#include "jointwork/geometry.hpp"

namespace jw {

struct GeneratorSpec {
  enum class Kind { star, grid, coplanar_lattice, grid_multijoint, random };
  Kind kind = Kind::grid;
  std::uint64_t count = 0;  // L for star/coplanar_lattice/random, N for grids
  unsigned n = 3;
  FieldDescriptor field = FieldDescriptor::rat();
  std::uint64_t seed = 0;
};

// L lines through the origin with moment-curve directions (1, t, t^2, ...),
// t = 0..L-1. Any n of them span: the direction matrix is Vandermonde.
// Requires L >= n and, over F_p, p >= L so the parameters stay distinct.
Arrangement gen_star(std::uint64_t L, unsigned n, const FieldDescriptor& field);

// The n * N^(n-1) axis-parallel lines through the N^n grid {0..N-1}^n.
// Joints are exactly the grid points, each on n lines, multiplicity 1.
// Requires N >= 1 and, over F_p, N <= p.
Arrangement gen_grid(std::uint64_t N, unsigned n, const FieldDescriptor& field);

// Three coplanar collections in the plane z = 0 over the rationals, covering
// the L x L lattice: L vertical lines, L horizontal lines, and 2L-1 diagonal
// lines x + y = const. Every lattice point meets one line of each collection,
// yet no multijoint exists: all directions share a plane.
std::array<Arrangement, 3> gen_coplanar_lattice(std::uint64_t L);

// gen_grid(N, 3) over the rationals, split by axis direction into three
// collections of N^2 lines each; the multijoints are the N^3 grid points.
std::array<Arrangement, 3> gen_grid_multijoint(std::uint64_t N);

// L distinct canonical lines drawn uniformly from all lines of F_p^n.
// Deterministic per seed. Throws when L exceeds the total line count.
Arrangement gen_random(std::uint64_t L, unsigned n, const FieldDescriptor& field,
                       std::uint64_t seed);

Arrangement generate(const GeneratorSpec& spec);

}  // namespace jw
