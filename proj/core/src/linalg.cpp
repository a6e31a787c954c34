// SPDX-License-Identifier: Apache-2.0

#include "jointwork/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace jw {

std::vector<std::size_t> rref_in_place(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t col = 0; col < m.cols && prow < m.rows; ++col) {
    std::size_t sel = m.rows;
    for (std::size_t r = prow; r < m.rows; ++r) {
      if (!m.at(r, col).is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel == m.rows) continue;
    if (sel != prow)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(prow, j));
    Scalar inv = m.at(prow, col).inverse();
    for (std::size_t j = col; j < m.cols; ++j) m.at(prow, j) = m.at(prow, j) * inv;
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == prow || m.at(r, col).is_zero()) continue;
      Scalar f = m.at(r, col);
      for (std::size_t j = col; j < m.cols; ++j)
        m.at(r, j) = m.at(r, j) - f * m.at(prow, j);
    }
    pivots.push_back(col);
    ++prow;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return rref_in_place(m).size(); }

std::vector<std::vector<Scalar>> nullspace(const Matrix& m) {
  Matrix r = m;
  std::vector<std::size_t> pivots = rref_in_place(r);
  std::vector<std::size_t> pivot_row_of_col(m.cols, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < pivots.size(); ++i) pivot_row_of_col[pivots[i]] = i;

  std::vector<std::vector<Scalar>> basis;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (pivot_row_of_col[f] != static_cast<std::size_t>(-1)) continue;
    std::vector<Scalar> v(m.cols, Scalar::zero(m.field));
    v[f] = Scalar::one(m.field);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -r.at(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------

Barrett32::Barrett32(std::uint64_t prime) : p(prime) {
  if (prime < 2 || prime >= (1ULL << 31))
    throw std::invalid_argument("Barrett32: prime out of range");
  magic = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) / prime);
}

ModEliminator::ModEliminator(std::uint64_t p, std::size_t cols)
    : br_(p), cols_(cols), pivot_index_by_col_(cols, npos) {}

void ModEliminator::reduce(std::vector<std::uint64_t>& row) const {
  for (std::size_t c = 0; c < cols_; ++c) {
    if (row[c] == 0) continue;
    std::size_t pi = pivot_index_by_col_[c];
    if (pi == npos) continue;
    const std::vector<std::uint64_t>& pr = pivot_rows_[pi];
    std::uint64_t f = br_.p - row[c];  // row += f * pr, pr[c] = 1
    for (std::size_t j = c; j < cols_; ++j)
      if (pr[j]) row[j] = br_.red(row[j] + f * pr[j]);
  }
}

std::optional<std::size_t> ModEliminator::add_row(std::vector<std::uint64_t> row,
                                                  std::size_t tag) {
  std::size_t lead = cols_;
  // Reduce against every stored pivot, not just those left of the first free
  // column: a pivot column right of the new lead must still be cleared or the
  // stored basis stops being fully reduced.
  for (std::size_t c = 0; c < cols_; ++c) {
    if (row[c] == 0) continue;
    std::size_t pi = pivot_index_by_col_[c];
    if (pi == npos) {
      if (lead == cols_) lead = c;
      continue;
    }
    const std::vector<std::uint64_t>& pr = pivot_rows_[pi];
    std::uint64_t f = br_.p - row[c];
    for (std::size_t j = c; j < cols_; ++j)
      if (pr[j]) row[j] = br_.red(row[j] + f * pr[j]);
  }
  if (lead == cols_) return std::nullopt;

  std::uint64_t inv = invmod_u64(row[lead], br_.p);
  for (std::size_t j = lead; j < cols_; ++j)
    if (row[j]) row[j] = br_.mul(row[j], inv);
  // Keep stored pivots fully reduced against each other.
  for (std::size_t pi = 0; pi < pivot_rows_.size(); ++pi) {
    std::vector<std::uint64_t>& pr = pivot_rows_[pi];
    if (pr[lead] == 0) continue;
    std::uint64_t f = br_.p - pr[lead];
    for (std::size_t j = lead; j < cols_; ++j)
      if (row[j]) pr[j] = br_.red(pr[j] + f * row[j]);
  }
  pivot_index_by_col_[lead] = pivot_rows_.size();
  pivot_rows_.push_back(std::move(row));
  pivot_cols_.push_back(lead);
  pivot_tags_.push_back(tag);
  return lead;
}

std::vector<std::uint64_t> ModEliminator::canonical_nullvector() const {
  assert(rank() < cols_);
  std::size_t free_col = cols_;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (pivot_index_by_col_[c] == npos) {
      free_col = c;
      break;
    }
  }
  std::vector<std::uint64_t> v(cols_, 0);
  v[free_col] = 1;
  for (std::size_t i = 0; i < pivot_rows_.size(); ++i) {
    std::uint64_t e = pivot_rows_[i][free_col];
    if (e) v[pivot_cols_[i]] = br_.p - e;
  }
  return v;
}

std::uint64_t mod_dot(const Barrett32& br, const std::vector<std::uint64_t>& a,
                      const std::vector<std::uint64_t>& b) {
  assert(a.size() == b.size());
  unsigned __int128 acc = 0;
  std::size_t chunk = 0;
  std::uint64_t result = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += static_cast<unsigned __int128>(a[i]) * b[i];
    if (++chunk == (1u << 16)) {  // p^2 < 2^62, so 2^16 terms stay below 2^78
      result = br.add(result, static_cast<std::uint64_t>(acc % br.p));
      acc = 0;
      chunk = 0;
    }
  }
  return br.add(result, static_cast<std::uint64_t>(acc % br.p));
}

std::uint64_t probe_prime(unsigned index) {
  std::uint64_t c = (1ULL << 31) - 1;
  for (;;) {
    while (!is_prime_u64(c)) c -= 2;
    if (index == 0) return c;
    --index;
    c -= 2;
  }
}

// ---------------------------------------------------------------------------

std::optional<mpq_class> rational_reconstruct(const mpz_class& r, const mpz_class& M) {
  if (M <= 1) return std::nullopt;
  mpz_class bound;
  mpz_class half = M / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());

  mpz_class a0 = M, a1 = r % M;
  if (a1 < 0) a1 += M;
  mpz_class t0 = 0, t1 = 1;
  while (a1 > bound) {
    mpz_class q = a0 / a1;
    mpz_class a2 = a0 - q * a1;
    a0 = a1;
    a1 = a2;
    mpz_class t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  mpz_class num = a1, den = t1;
  if (den < 0) {
    den = -den;
    num = -num;
  }
  if (den > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) return std::nullopt;
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

namespace {

// Dense mod-p inverse; nullopt when singular mod p.
std::optional<std::vector<std::uint64_t>> invert_mod(const std::vector<std::uint64_t>& a,
                                                     std::size_t r, const Barrett32& br) {
  std::vector<std::uint64_t> m(a);
  std::vector<std::uint64_t> inv(r * r, 0);
  for (std::size_t i = 0; i < r; ++i) inv[i * r + i] = 1;
  for (std::size_t col = 0; col < r; ++col) {
    std::size_t sel = r;
    for (std::size_t i = col; i < r; ++i) {
      if (m[i * r + col] != 0) {
        sel = i;
        break;
      }
    }
    if (sel == r) return std::nullopt;
    if (sel != col) {
      for (std::size_t j = 0; j < r; ++j) {
        std::swap(m[sel * r + j], m[col * r + j]);
        std::swap(inv[sel * r + j], inv[col * r + j]);
      }
    }
    std::uint64_t iv = invmod_u64(m[col * r + col], br.p);
    for (std::size_t j = 0; j < r; ++j) {
      m[col * r + j] = br.mul(m[col * r + j], iv);
      inv[col * r + j] = br.mul(inv[col * r + j], iv);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (i == col) continue;
      std::uint64_t f = m[i * r + col];
      if (!f) continue;
      std::uint64_t nf = br.p - f;
      for (std::size_t j = 0; j < r; ++j) {
        if (m[col * r + j]) m[i * r + j] = br.red(m[i * r + j] + nf * m[col * r + j]);
        if (inv[col * r + j])
          inv[i * r + j] = br.red(inv[i * r + j] + nf * inv[col * r + j]);
      }
    }
  }
  return inv;
}

}  // namespace

std::optional<std::vector<mpq_class>> dixon_solve(const std::vector<mpz_class>& A,
                                                  std::size_t r,
                                                  const std::vector<mpz_class>& b,
                                                  std::uint64_t p, std::size_t max_bits) {
  assert(A.size() == r * r && b.size() == r);
  Barrett32 br(p);
  std::vector<std::uint64_t> Ap(r * r);
  for (std::size_t i = 0; i < r * r; ++i) {
    Ap[i] = mpz_fdiv_ui(A[i].get_mpz_t(), static_cast<unsigned long>(p));
  }
  auto inv = invert_mod(Ap, r, br);
  if (!inv) return std::nullopt;

  mpz_class pz = static_cast<unsigned long>(p);
  std::vector<mpz_class> residual(b);
  std::vector<mpz_class> x(r, 0);
  mpz_class pk = 1;  // p^steps
  std::vector<std::uint64_t> rmod(r), digit(r);
  std::size_t next_try = 8;

  auto try_reconstruct = [&]() -> std::optional<std::vector<mpq_class>> {
    std::vector<mpq_class> sol(r);
    mpz_class den = 1;
    for (std::size_t i = 0; i < r; ++i) {
      // Reconstruct x[i]*den first: scaling by the running denominator keeps
      // later entries cheap when the solution has a common denominator.
      mpz_class scaled = (x[i] * den) % pk;
      auto q = rational_reconstruct(scaled, pk);
      if (!q) return std::nullopt;
      sol[i] = *q / mpq_class(den);
      sol[i].canonicalize();
      mpz_class d = q->get_den();
      den *= d / mpz_class(gcd(den, d));
    }
    // Exact integer verification of A sol = b against the common denominator
    // of the reduced entries.
    mpz_class D = 1;
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class d = sol[i].get_den();
      D *= d / mpz_class(gcd(D, d));
    }
    std::vector<mpz_class> num(r);
    for (std::size_t i = 0; i < r; ++i)
      num[i] = sol[i].get_num() * mpz_class(D / sol[i].get_den());
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class acc = 0;
      for (std::size_t j = 0; j < r; ++j) acc += A[i * r + j] * num[j];
      if (acc != b[i] * D) return std::nullopt;
    }
    return sol;
  };

  for (std::size_t step = 0;; ++step) {
    if (mpz_sizeinbase(pk.get_mpz_t(), 2) > max_bits) return std::nullopt;
    for (std::size_t i = 0; i < r; ++i)
      rmod[i] = mpz_fdiv_ui(residual[i].get_mpz_t(), static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < r; ++i) {
      unsigned __int128 acc = 0;
      const std::uint64_t* row = inv->data() + i * r;
      for (std::size_t j = 0; j < r; ++j)
        acc += static_cast<unsigned __int128>(row[j]) * rmod[j];
      digit[i] = static_cast<std::uint64_t>(acc % p);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (digit[i]) x[i] += pk * static_cast<unsigned long>(digit[i]);
    }
    // residual = (residual - A*digit) / p, exact by construction.
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class acc = residual[i];
      for (std::size_t j = 0; j < r; ++j) {
        if (digit[j]) acc -= A[i * r + j] * static_cast<unsigned long>(digit[j]);
      }
      assert(acc % pz == 0);
      residual[i] = acc / pz;
    }
    pk *= pz;
    if (step + 1 >= next_try) {
      if (auto sol = try_reconstruct()) return sol;
      next_try *= 2;
    }
  }
}

}  // namespace jw
