// SPDX-License-Identifier: Apache-2.0

#include "jointwork/field.hpp"

#include <array>

namespace jw {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) {
  if (a == 0) throw std::invalid_argument("inverse of zero");
  // Fermat; p is prime by construction.
  return powmod_u64(a, p - 2, p);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is exact for all n < 3.3 * 10^24.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

FieldDescriptor FieldDescriptor::fp(std::uint64_t p) {
  if (p >= (1ull << 61)) throw std::invalid_argument("prime modulus must be < 2^61");
  if (!is_prime_u64(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  return FieldDescriptor(Kind::prime, p);
}

FieldDescriptor FieldDescriptor::rat() { return FieldDescriptor(Kind::rational, 0); }

std::string FieldDescriptor::str() const {
  return is_prime() ? "fp:" + std::to_string(p_) : "rat";
}

FieldDescriptor FieldDescriptor::parse(const std::string& tag) {
  if (tag == "rat") return rat();
  if (tag.rfind("fp:", 0) == 0) {
    const std::string digits = tag.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad field tag: " + tag);
    }
    return fp(std::stoull(digits));
  }
  throw std::invalid_argument("bad field tag: " + tag);
}

Scalar Scalar::zero(const FieldDescriptor& f) {
  return f.is_prime() ? Scalar(f, std::uint64_t{0}) : Scalar(f, mpq_class(0));
}

Scalar Scalar::one(const FieldDescriptor& f) {
  return f.is_prime() ? Scalar(f, std::uint64_t{1} % f.p()) : Scalar(f, mpq_class(1));
}

Scalar Scalar::from_int(const FieldDescriptor& f, long long v) {
  if (f.is_rational()) {
    mpq_class q;
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
    q = z;
    return Scalar(f, q);
  }
  const auto p = static_cast<long long>(f.p());
  long long r = v % p;
  if (r < 0) r += p;
  return Scalar(f, static_cast<std::uint64_t>(r));
}

Scalar Scalar::from_mpz(const FieldDescriptor& f, const mpz_class& v) {
  if (f.is_rational()) return Scalar(f, mpq_class(v));
  mpz_class p;
  mpz_set_ui(p.get_mpz_t(), static_cast<unsigned long>(f.p()));
  mpz_class m;
  mpz_mod(m.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return Scalar(f, static_cast<std::uint64_t>(mpz_get_ui(m.get_mpz_t())));
}

Scalar Scalar::from_mpq(const FieldDescriptor& f, const mpq_class& v) {
  if (!f.is_rational()) throw std::invalid_argument("rational value in a prime field");
  mpq_class q = v;
  q.canonicalize();
  return Scalar(f, q);
}

Scalar Scalar::parse(const FieldDescriptor& f, const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty scalar literal");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    if (!f.is_rational()) throw std::invalid_argument("fraction literal needs the rational field: " + text);
    mpq_class q(text);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    return Scalar(f, q);
  }
  mpz_class z;
  if (mpz_set_str(z.get_mpz_t(), text.c_str(), 10) != 0) {
    throw std::invalid_argument("bad scalar literal: " + text);
  }
  return from_mpz(f, z);
}

bool Scalar::is_zero() const {
  return field_.is_prime() ? std::get<std::uint64_t>(v_) == 0
                           : sgn(std::get<mpq_class>(v_)) == 0;
}

bool Scalar::is_one() const {
  return field_.is_prime() ? std::get<std::uint64_t>(v_) == 1 % field_.p()
                           : std::get<mpq_class>(v_) == 1;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (field_ != o.field_) throw std::invalid_argument("mixed-field scalar arithmetic");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  if (field_.is_prime()) {
    std::uint64_t s = std::get<std::uint64_t>(v_) + std::get<std::uint64_t>(o.v_);
    if (s >= field_.p()) s -= field_.p();
    return Scalar(field_, s);
  }
  return Scalar(field_, mpq_class(std::get<mpq_class>(v_) + std::get<mpq_class>(o.v_)));
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same_field(o);
  if (field_.is_prime()) {
    const std::uint64_t a = std::get<std::uint64_t>(v_);
    const std::uint64_t b = std::get<std::uint64_t>(o.v_);
    return Scalar(field_, a >= b ? a - b : a + field_.p() - b);
  }
  return Scalar(field_, mpq_class(std::get<mpq_class>(v_) - std::get<mpq_class>(o.v_)));
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  if (field_.is_prime()) {
    return Scalar(field_, mulmod_u64(std::get<std::uint64_t>(v_), std::get<std::uint64_t>(o.v_), field_.p()));
  }
  return Scalar(field_, mpq_class(std::get<mpq_class>(v_) * std::get<mpq_class>(o.v_)));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  if (field_.is_prime()) {
    const std::uint64_t a = std::get<std::uint64_t>(v_);
    return Scalar(field_, a == 0 ? 0 : field_.p() - a);
  }
  return Scalar(field_, mpq_class(-std::get<mpq_class>(v_)));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::invalid_argument("inverse of zero");
  if (field_.is_prime()) return Scalar(field_, invmod_u64(std::get<std::uint64_t>(v_), field_.p()));
  return Scalar(field_, mpq_class(1 / std::get<mpq_class>(v_)));
}

Scalar Scalar::pow(std::uint64_t e) const {
  if (field_.is_prime()) return Scalar(field_, powmod_u64(std::get<std::uint64_t>(v_), e, field_.p()));
  mpq_class r;
  mpz_pow_ui(r.get_num().get_mpz_t(), std::get<mpq_class>(v_).get_num().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(r.get_den().get_mpz_t(), std::get<mpq_class>(v_).get_den().get_mpz_t(), static_cast<unsigned long>(e));
  r.canonicalize();
  return Scalar(field_, r);
}

bool Scalar::operator==(const Scalar& o) const {
  if (field_ != o.field_) return false;
  return field_.is_prime() ? std::get<std::uint64_t>(v_) == std::get<std::uint64_t>(o.v_)
                           : std::get<mpq_class>(v_) == std::get<mpq_class>(o.v_);
}

int Scalar::cmp(const Scalar& o) const {
  check_same_field(o);
  if (field_.is_prime()) {
    const std::uint64_t a = std::get<std::uint64_t>(v_);
    const std::uint64_t b = std::get<std::uint64_t>(o.v_);
    return a < b ? -1 : (a > b ? 1 : 0);
  }
  return mpq_cmp(std::get<mpq_class>(v_).get_mpq_t(), std::get<mpq_class>(o.v_).get_mpq_t());
}

std::string Scalar::str() const {
  if (field_.is_prime()) return std::to_string(std::get<std::uint64_t>(v_));
  const mpq_class& q = std::get<mpq_class>(v_);
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::uint64_t Scalar::fp_value() const {
  if (!field_.is_prime()) throw std::invalid_argument("fp_value on a rational scalar");
  return std::get<std::uint64_t>(v_);
}

const mpq_class& Scalar::rat_value() const {
  if (!field_.is_rational()) throw std::invalid_argument("rat_value on a prime-field scalar");
  return std::get<mpq_class>(v_);
}

}  // namespace jw
