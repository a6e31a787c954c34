// SPDX-License-Identifier: Apache-2.0
// Exact linear algebra in two registers: a generic dense matrix over Scalar
// (any supported field) with deterministic first-nonzero pivoting, and a fast
// word-size kernel for primes below 2^31 used by the vanishing-degree search.
// Rational systems are solved exactly by p-adic lifting plus rational
// reconstruction; every lifted solution is re-verified over the integers.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "jointwork/field.hpp"

namespace jw {

// ---------------------------------------------------------------------------
// Generic dense matrix over a field.

struct Matrix {
  FieldDescriptor field;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Scalar> a;  // row-major

  Matrix(const FieldDescriptor& f, std::size_t r, std::size_t c)
      : field(f), rows(r), cols(c), a(r * c, Scalar::zero(f)) {}

  Scalar& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// In-place reduced row echelon form; pivots are the first nonzero entry in
// each column sweep. Returns pivot column indices in increasing order.
std::vector<std::size_t> rref_in_place(Matrix& m);

std::size_t rank(Matrix m);

// Canonical right-nullspace basis: one vector per free column in increasing
// column order; that free coordinate is 1, all other free coordinates 0.
std::vector<std::vector<Scalar>> nullspace(const Matrix& m);

// ---------------------------------------------------------------------------
// Word-size modular kernel, p < 2^31.

struct Barrett32 {
  std::uint64_t p = 0;
  std::uint64_t magic = 0;  // floor(2^64 / p)

  Barrett32() = default;
  explicit Barrett32(std::uint64_t prime);

  // x < p^2 required (fits since p < 2^31).
  std::uint64_t red(std::uint64_t x) const {
    std::uint64_t q = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x) * magic) >> 64);
    std::uint64_t r = x - q * p;
    return r >= p ? r - p : r;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return red(a * b); }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p - b;
  }
};

// Incremental row eliminator that maintains its pivot rows in reduced
// echelon form, so reducing an incoming row is a single left-to-right pass
// and canonical nullvectors read off directly.
class ModEliminator {
 public:
  ModEliminator(std::uint64_t p, std::size_t cols);

  // Reduces the row against the current pivots. Installs it if independent
  // and returns its pivot column; returns nullopt for dependent rows.
  // `tag` identifies the row's origin (e.g. a point index).
  std::optional<std::size_t> add_row(std::vector<std::uint64_t> row, std::size_t tag);

  // Reduce without installing; row is modified in place.
  void reduce(std::vector<std::uint64_t>& row) const;

  std::size_t rank() const { return pivot_cols_.size(); }
  std::size_t cols() const { return cols_; }
  bool full_rank() const { return rank() == cols_; }
  const std::vector<std::size_t>& pivot_cols() const { return pivot_cols_; }
  const std::vector<std::size_t>& pivot_tags() const { return pivot_tags_; }
  // Pivot row i, aligned with pivot_cols()[i] / pivot_tags()[i].
  const std::vector<std::uint64_t>& pivot_row(std::size_t i) const { return pivot_rows_[i]; }
  const Barrett32& barrett() const { return br_; }

  // Canonical nullvector: 1 at the first non-pivot column, 0 at the other
  // free columns. Requires rank < cols.
  std::vector<std::uint64_t> canonical_nullvector() const;

 private:
  Barrett32 br_;
  std::size_t cols_;
  std::vector<std::vector<std::uint64_t>> pivot_rows_;
  std::vector<std::size_t> pivot_cols_;
  std::vector<std::size_t> pivot_tags_;
  std::vector<std::size_t> pivot_index_by_col_;  // cols_, npos when free
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// a·b mod p for row/vector pairs of equal length.
std::uint64_t mod_dot(const Barrett32& br, const std::vector<std::uint64_t>& a,
                      const std::vector<std::uint64_t>& b);

// Deterministic sequence of primes just below 2^31, index 0 the largest.
std::uint64_t probe_prime(unsigned index);

// ---------------------------------------------------------------------------
// Exact rational solving.

// Find n/d = r (mod M) with |n|, d <= floor(sqrt(M/2)), gcd(n,d)=1, d > 0.
std::optional<mpq_class> rational_reconstruct(const mpz_class& r, const mpz_class& M);

// Exact solution of the square integer system A x = b by p-adic lifting at
// the given prime. Returns nullopt when A is singular mod p or the lifted
// expansion exceeds max_bits without reconstructing; a returned solution is
// verified exactly over the integers.
std::optional<std::vector<mpq_class>> dixon_solve(const std::vector<mpz_class>& A,
                                                  std::size_t r,
                                                  const std::vector<mpz_class>& b,
                                                  std::uint64_t p,
                                                  std::size_t max_bits = 1u << 20);

}  // namespace jw
