// SPDX-License-Identifier: Apache-2.0
// Low-degree polynomials vanishing on finite point sets. dvir_polynomial
// returns a nonzero witness inside the a-priori bound floor((n!·m)^(1/n))+1;
// minimal_vanishing_degree finds the least possible degree outright; and
// MinDegreeTracker keeps that least degree current while points are deleted
// one at a time, which is the inner loop of peeling. Every answer is exact.
// Prime fields below 2^31 use word-size elimination directly. Rational
// inputs are eliminated at a probe prime, the candidate coefficient vector
// is lifted p-adically, and the lifted polynomial is re-verified at every
// point; a full-rank level at any probe prime is already a proof over the
// rationals, so only the nullvector direction needs the verification step.

#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "jointwork/field.hpp"
#include "jointwork/geometry.hpp"
#include "jointwork/linalg.hpp"
#include "jointwork/poly.hpp"

namespace jw {

// Hard input caps; exceeding one throws CapExceeded. Rational and wide-prime
// systems cost far more per row than word-size modular ones, so their caps
// are tighter.
inline constexpr std::size_t kVanishingPointCap = 5000;
inline constexpr std::size_t kVanishingRationalCap = 1200;
inline constexpr std::size_t kVanishingWidePrimeCap = 800;

struct VanishingResult {
  MultiPoly poly;  // nonzero; vanishes at every input point (verified by
                   // evaluation before return)
  unsigned degree_bound_used = 0;  // floor((n!·m)^(1/n)) + 1 >= poly.degree()
  std::size_t columns = 0;         // monomials the system was solved over (m+1)
  std::size_t nullspace_dim = 0;   // nullity of that solved system
};

// Nonzero polynomial within the degree bound vanishing at all m points. The
// linear system keeps only the first m+1 monomials in grlex order, which
// still guarantees a nullvector and caps the work at m rows by m+1 columns.
// Requires a nonempty point list.
VanishingResult dvir_polynomial(const std::vector<Point>& points, const FieldDescriptor& field);

struct MinDegreeResult {
  unsigned degree = 0;  // least degree of a nonzero vanishing polynomial
  MultiPoly poly;       // witness of exactly that degree
};

// Least degree of a nonzero polynomial vanishing on the whole (nonempty)
// set, with a witness polynomial of exactly that degree.
MinDegreeResult minimal_vanishing_degree(const std::vector<Point>& points,
                                         const FieldDescriptor& field);

// Zeros of f over the full cube F_p^n by direct enumeration. Prime fields
// only; requires p^n <= 2e6.
mpz_class exhaustive_zero_count(const MultiPoly& f);

// Maintains the minimal vanishing degree of a shrinking point set over a
// prime field p < 2^31. Built once over the full set; remove() deletes one
// point, and the degree can only stay or drop. The degree is certified from
// both sides at all times: a square invertible sub-matrix one level down
// shows nothing of lower degree vanishes, and the stored nullvector shows
// something of the current degree does. Deleting a point that carries a
// witness row triggers a single-row exchange against the live set; by the
// exchange lemma, failure to repair proves the rank dropped, and the tracker
// re-eliminates downward to the new degree. Removing the last point leaves
// degree 0 with witness 1.
class MinDegreeTracker {
 public:
  MinDegreeTracker(const std::vector<Point>& points, const FieldDescriptor& field,
                   std::uint64_t seed = 0);

  unsigned degree() const { return d_; }
  MultiPoly poly() const;  // witness for the live set; constant 1 when empty
  std::size_t size() const { return m_; }
  std::size_t remaining() const { return alive_count_; }
  bool alive(std::size_t idx) const { return alive_.at(idx) != 0; }
  void remove(std::size_t idx);  // index into the constructor's vector

 private:
  ModEliminator run_level(unsigned level, bool early_exit) const;
  void build_rows(unsigned level, const std::vector<std::vector<std::uint64_t>>& coords);
  void adopt_witness(const std::vector<std::size_t>& tags, unsigned level);
  bool try_replace(std::size_t slot);
  void descend();

  FieldDescriptor field_;
  Barrett32 br_;
  unsigned n_ = 0;
  std::size_t m_ = 0;
  unsigned d_ = 0;
  std::size_t alive_count_ = 0;
  std::vector<char> alive_;
  std::vector<std::size_t> order_;  // fixed shuffled traversal order
  std::vector<Monomial> monos_;     // grlex, at the construction-time degree
  std::vector<std::size_t> cols_at_;  // cols_at_[l] = #monomials of degree <= l
  std::vector<std::vector<std::uint64_t>> rows_;  // per point, width monos_.size()
  // Witness at level d_-1: the rows of points tags_ form an invertible
  // square matrix W; winv_ is its inverse, maintained under row exchange.
  std::vector<std::size_t> tags_;
  std::vector<std::size_t> slot_of_;  // point -> witness slot, npos when absent
  std::vector<std::vector<std::uint64_t>> wrows_;
  std::vector<std::vector<std::uint64_t>> winv_;
  std::vector<std::uint64_t> nullvec_;  // width cols_at_[d_]
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

}  // namespace jw
