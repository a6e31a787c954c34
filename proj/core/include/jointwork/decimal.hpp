// SPDX-License-Identifier: Apache-2.0
// Fixed-point decimals over big integers. A Dec holds units * 10^-scale
// exactly; producers state how many digits are guaranteed. Roots are exact
// integer roots of scaled radicands (mpz_root), so floor(x^(1/k) * 10^s) is
// computed without any floating point, and sums of such terms carry an
// error bounded by one ulp per term.

#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace jw {

struct Dec {
  mpz_class units;
  int scale = 0;  // value = units * 10^-scale

  std::string str() const;
  double approx() const;

  static mpz_class pow10(int k);

  // floor((num/den)^(1/root) * 10^scale); num, den >= 0, den > 0.
  static Dec root_ratio(const mpz_class& num, const mpz_class& den, unsigned root, int scale);
  // floor(x^(1/root) * 10^scale)
  static Dec root(const mpz_class& x, unsigned root, int scale);
  // floor((a/b) * 10^scale)
  static Dec ratio(const mpz_class& a, const mpz_class& b, int scale);

  static Dec from_int(const mpz_class& v, int scale);

  Dec rescaled(int new_scale) const;  // truncation toward zero when shrinking
  Dec operator+(const Dec& o) const;
  Dec operator-(const Dec& o) const;
  int cmp(const Dec& o) const;
  bool operator<(const Dec& o) const { return cmp(o) < 0; }
  bool operator<=(const Dec& o) const { return cmp(o) <= 0; }
};

}  // namespace jw
