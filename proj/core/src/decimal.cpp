// SPDX-License-Identifier: Apache-2.0

#include "jointwork/decimal.hpp"

#include <stdexcept>

namespace jw {

mpz_class Dec::pow10(int k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return r;
}

Dec Dec::from_int(const mpz_class& v, int scale) {
  return Dec{v * pow10(scale), scale};
}

Dec Dec::ratio(const mpz_class& a, const mpz_class& b, int scale) {
  if (b == 0) throw std::invalid_argument("Dec::ratio: zero denominator");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), mpz_class(a * pow10(scale)).get_mpz_t(), b.get_mpz_t());
  return Dec{q, scale};
}

Dec Dec::root(const mpz_class& x, unsigned root, int scale) {
  return root_ratio(x, 1, root, scale);
}

Dec Dec::root_ratio(const mpz_class& num, const mpz_class& den, unsigned root, int scale) {
  if (num < 0 || den <= 0) throw std::invalid_argument("Dec::root_ratio: negative radicand");
  if (root == 0) throw std::invalid_argument("Dec::root_ratio: zero root");
  // floor((num/den)^(1/r) * 10^s) = floor( floor(num*10^(r s)/den)^(1/r) )
  // since t <= num*10^(rs)/den < t+1 brackets the r-th power monotonically.
  mpz_class scaled;
  mpz_class shifted = num * pow10(static_cast<int>(root) * scale);
  mpz_fdiv_q(scaled.get_mpz_t(), shifted.get_mpz_t(), den.get_mpz_t());
  mpz_class r;
  mpz_root(r.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(root));
  return Dec{r, scale};
}

Dec Dec::rescaled(int new_scale) const {
  if (new_scale == scale) return *this;
  if (new_scale > scale) return Dec{units * pow10(new_scale - scale), new_scale};
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), units.get_mpz_t(), pow10(scale - new_scale).get_mpz_t());
  return Dec{q, new_scale};
}

Dec Dec::operator+(const Dec& o) const {
  int s = scale > o.scale ? scale : o.scale;
  return Dec{rescaled(s).units + o.rescaled(s).units, s};
}

Dec Dec::operator-(const Dec& o) const {
  int s = scale > o.scale ? scale : o.scale;
  return Dec{rescaled(s).units - o.rescaled(s).units, s};
}

int Dec::cmp(const Dec& o) const {
  int s = scale > o.scale ? scale : o.scale;
  return ::cmp(rescaled(s).units, o.rescaled(s).units);
}

std::string Dec::str() const {
  mpz_class u = units;
  bool neg = u < 0;
  if (neg) u = -u;
  std::string digits = u.get_str();
  std::string out;
  if (scale == 0) {
    out = digits;
  } else {
    if (static_cast<int>(digits.size()) <= scale)
      digits.insert(0, static_cast<size_t>(scale) - digits.size() + 1, '0');
    out = digits.substr(0, digits.size() - static_cast<size_t>(scale)) + "." +
          digits.substr(digits.size() - static_cast<size_t>(scale));
  }
  return neg ? "-" + out : out;
}

double Dec::approx() const {
  mpq_class q(units, pow10(scale));
  q.canonicalize();
  return q.get_d();
}

}  // namespace jw
