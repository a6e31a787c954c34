// SPDX-License-Identifier: Apache-2.0
// Exact field arithmetic. A FieldDescriptor selects either a prime field F_p
// with p < 2^61 (products fit double-word intermediates) or the rationals.
// Scalar holds one canonical element: a residue in [0, p) or a reduced
// fraction with positive denominator. Every operation is exact; nothing in
// this header or its implementation ever rounds.

#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "jointwork/errors.hpp"

namespace jw {

class FieldDescriptor {
public:
  enum class Kind : std::uint8_t { prime, rational };

  // Prime field; p is checked by a deterministic Miller-Rabin test.
  static FieldDescriptor fp(std::uint64_t p);
  static FieldDescriptor rat();

  Kind kind() const { return kind_; }
  bool is_prime() const { return kind_ == Kind::prime; }
  bool is_rational() const { return kind_ == Kind::rational; }
  std::uint64_t p() const { return p_; }

  bool operator==(const FieldDescriptor& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const FieldDescriptor& o) const { return !(*this == o); }

  std::string str() const;                        // "fp:101" or "rat"
  static FieldDescriptor parse(const std::string& tag);

private:
  FieldDescriptor(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint64_t p_;
};

// Deterministic Miller-Rabin, exact for every n < 2^64.
bool is_prime_u64(std::uint64_t n);

class Scalar {
public:
  Scalar() : field_(FieldDescriptor::rat()), v_(mpq_class(0)) {}

  static Scalar zero(const FieldDescriptor& f);
  static Scalar one(const FieldDescriptor& f);
  static Scalar from_int(const FieldDescriptor& f, long long v);
  static Scalar from_mpz(const FieldDescriptor& f, const mpz_class& v);
  static Scalar from_mpq(const FieldDescriptor& f, const mpq_class& v);  // rationals only
  // Accepts "-12" for both kinds and "num/den" for rationals.
  static Scalar parse(const FieldDescriptor& f, const std::string& text);

  const FieldDescriptor& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Canonical total order within one field (residue order, rational order).
  int cmp(const Scalar& o) const;
  bool operator<(const Scalar& o) const { return cmp(o) < 0; }

  std::string str() const;  // canonical: "17", "-3/4"

  std::uint64_t fp_value() const;        // prime fields only
  const mpq_class& rat_value() const;    // rationals only

private:
  Scalar(const FieldDescriptor& f, std::uint64_t r) : field_(f), v_(r) {}
  Scalar(const FieldDescriptor& f, mpq_class q) : field_(f), v_(std::move(q)) {}
  void check_same_field(const Scalar& o) const;

  FieldDescriptor field_;
  std::variant<std::uint64_t, mpq_class> v_;
};

// Residue helpers used by the fast kernels as well as Scalar itself.
std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p);

}  // namespace jw
