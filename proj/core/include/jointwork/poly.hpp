// SPDX-License-Identifier: Apache-2.0
// Sparse multivariate and dense univariate polynomials over a Scalar field,
// with the derivative calculus the rest of the library is built on: Hasse
// derivatives, gradients, line restrictions, p-th-power root extraction,
// square-free parts, and Sylvester resultants.
//
// Monomials are ordered graded-lexicographically: lower total degree first,
// ties broken so that x1-heavy exponent vectors come first. All printing and
// matrix-column enumeration uses this one order.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "jointwork/field.hpp"

namespace jw {

struct Monomial {
  std::vector<std::uint32_t> e;

  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exps) : e(std::move(exps)) {}
  static Monomial unit(unsigned n) { return Monomial(std::vector<std::uint32_t>(n, 0)); }
  static Monomial axis(unsigned n, unsigned j);

  unsigned nvars() const { return static_cast<unsigned>(e.size()); }
  std::uint64_t degree() const;
  bool divides(const Monomial& o) const;          // componentwise <=
  Monomial operator*(const Monomial& o) const;    // exponent sum
  Monomial operator/(const Monomial& o) const;    // exponent difference, o | *this
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
};

// Strict order: ascending total degree, then descending lex on exponents
// (x1^d is the first monomial of degree d).
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// All monomials in n variables of total degree <= d, in GrlexLess order.
std::vector<Monomial> enumerate_monomials(unsigned n, unsigned d);
// C(d+n, n), the count enumerate_monomials returns.
mpz_class monomial_count(unsigned n, unsigned d);

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Scalar, GrlexLess>;

  MultiPoly(const FieldDescriptor& f, unsigned n) : field_(f), n_(n) {}

  static MultiPoly zero(const FieldDescriptor& f, unsigned n) { return MultiPoly(f, n); }
  static MultiPoly constant(const FieldDescriptor& f, unsigned n, const Scalar& c);
  static MultiPoly term(const FieldDescriptor& f, const Monomial& m, const Scalar& c);
  static MultiPoly variable(const FieldDescriptor& f, unsigned n, unsigned j);

  const FieldDescriptor& field() const { return field_; }
  unsigned nvars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::uint64_t degree() const;  // 0 for the zero polynomial
  std::uint64_t degree_in(unsigned var) const;

  void add_term(const Monomial& m, const Scalar& c);
  Scalar coeff(const Monomial& m) const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly scaled(const Scalar& c) const;
  MultiPoly pow(unsigned k) const;
  bool operator==(const MultiPoly& o) const;

  Scalar evaluate(const std::vector<Scalar>& point) const;

  std::string str() const;  // leading term first; "0" for the zero polynomial
  static MultiPoly parse(const FieldDescriptor& f, unsigned n, const std::string& text);

 private:
  FieldDescriptor field_;
  unsigned n_;
  TermMap terms_;
};

class UniPoly {
 public:
  explicit UniPoly(const FieldDescriptor& f) : field_(f) {}
  UniPoly(const FieldDescriptor& f, std::vector<Scalar> coeffs);

  static UniPoly zero(const FieldDescriptor& f) { return UniPoly(f); }
  static UniPoly constant(const FieldDescriptor& f, const Scalar& c);

  const FieldDescriptor& field() const { return field_; }
  bool is_zero() const { return c_.empty(); }
  long long degree() const { return static_cast<long long>(c_.size()) - 1; }
  Scalar coeff(std::size_t k) const;  // 0 beyond the stored degree
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar leading() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly scaled(const Scalar& c) const;
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  Scalar evaluate(const Scalar& t) const;
  // Order-i Hasse derivative: coefficient rule C(k, i) c_k t^(k-i).
  UniPoly hasse(unsigned i) const;

  std::string str() const;  // in the variable t, lowest degree first

 private:
  void trim();
  FieldDescriptor field_;
  std::vector<Scalar> c_;  // lowest degree first, leading nonzero
};

// Monic gcd by the Euclidean algorithm; gcd(0,0) = 0.
UniPoly unipoly_gcd(UniPoly a, UniPoly b);
// Classic first derivative (equals the first Hasse derivative).
UniPoly unipoly_derivative(const UniPoly& f);
// f / gcd(f, f'), normalized monic: the distinct-root part over the field.
UniPoly unipoly_square_free(const UniPoly& f);
// Exact division; throws if the division leaves a remainder.
UniPoly unipoly_div_exact(const UniPoly& a, const UniPoly& b);
std::pair<UniPoly, UniPoly> unipoly_divmod(const UniPoly& a, const UniPoly& b);

// ---------------------------------------------------------------------------
// Derivative calculus.

// f^(i): the term x^a contributes prod_j C(a_j, i_j) * c * x^(a-i).
MultiPoly hasse_derivative(const MultiPoly& f, const Monomial& i);
// (f^(e_1), ..., f^(e_n)).
std::vector<MultiPoly> gradient(const MultiPoly& f);
// f(v + t b) as a polynomial in t; b must be nonzero.
UniPoly restrict_to_line(const MultiPoly& f, const std::vector<Scalar>& v,
                         const std::vector<Scalar>& b);

enum class PthPowerKind { constant, power_root, nonzero_gradient };
struct PthPowerStructure {
  PthPowerKind kind;
  std::optional<MultiPoly> root;  // g with g^p = f, present iff kind == power_root
};
// Over a prime field: if the gradient vanishes identically, every exponent is
// divisible by p and f = g^p with g's coefficients equal to f's (the Frobenius
// fixes the prime field). Nonconstant f with a vanishing gradient but a
// non-divisible exponent is impossible and raises InvariantViolation.
PthPowerStructure pth_power_structure(const MultiPoly& f);

// ---------------------------------------------------------------------------
// Resultants.

// The (deg_f + deg_g) square Sylvester matrix of f and g in variable `var`,
// row-major, entries polynomials in the remaining variables.
std::vector<MultiPoly> sylvester_matrix(const MultiPoly& f, const MultiPoly& g,
                                        unsigned var);
// Res(f, g; var) by fraction-free Bareiss elimination. Both inputs must have
// positive degree in `var`.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, unsigned var);
// Cofactor-expansion determinant, the small-instance oracle.
MultiPoly determinant_cofactor(const std::vector<MultiPoly>& m, std::size_t dim);

// Product of the distinct factors, each taken once; factors are deduplicated
// after scaling to a monic leading coefficient.
MultiPoly square_free_part(const std::vector<std::pair<MultiPoly, unsigned>>& factors);

// Exact quotient a / b in the polynomial ring; throws if not divisible.
MultiPoly multipoly_div_exact(const MultiPoly& a, const MultiPoly& b);

// C(top, bot) as an exact integer.
mpz_class binomial(std::uint64_t top, std::uint64_t bot);

}  // namespace jw
