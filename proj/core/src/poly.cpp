// SPDX-License-Identifier: Apache-2.0

#include "jointwork/poly.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "jointwork/errors.hpp"

namespace jw {

Monomial Monomial::axis(unsigned n, unsigned j) {
  if (j >= n) throw std::invalid_argument("Monomial::axis: index out of range");
  std::vector<std::uint32_t> e(n, 0);
  e[j] = 1;
  return Monomial(std::move(e));
}

std::uint64_t Monomial::degree() const {
  std::uint64_t s = 0;
  for (std::uint32_t x : e) s += x;
  return s;
}

bool Monomial::divides(const Monomial& o) const {
  if (e.size() != o.e.size()) return false;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  assert(e.size() == o.e.size());
  Monomial r(*this);
  for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  assert(o.divides(*this));
  Monomial r(*this);
  for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
  return r;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  std::uint64_t da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.e > b.e;  // x1-heavy vectors first within a degree
}

std::vector<Monomial> enumerate_monomials(unsigned n, unsigned d) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> cur(n, 0);
  // Within one total degree, recurse with the leading exponent descending.
  auto rec = [&](auto&& self, unsigned pos, unsigned remaining) -> void {
    if (pos + 1 == n) {
      cur[pos] = remaining;
      out.push_back(Monomial(cur));
      return;
    }
    for (unsigned v = remaining + 1; v-- > 0;) {
      cur[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  if (n == 0) throw std::invalid_argument("enumerate_monomials: zero variables");
  for (unsigned deg = 0; deg <= d; ++deg) rec(rec, 0, deg);
  return out;
}

mpz_class monomial_count(unsigned n, unsigned d) {
  return binomial(static_cast<std::uint64_t>(d) + n, n);
}

mpz_class binomial(std::uint64_t top, std::uint64_t bot) {
  if (bot > top) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(top),
               static_cast<unsigned long>(bot));
  return r;
}

// ---------------------------------------------------------------------------

MultiPoly MultiPoly::constant(const FieldDescriptor& f, unsigned n, const Scalar& c) {
  MultiPoly p(f, n);
  p.add_term(Monomial::unit(n), c);
  return p;
}

MultiPoly MultiPoly::term(const FieldDescriptor& f, const Monomial& m, const Scalar& c) {
  MultiPoly p(f, m.nvars());
  p.add_term(m, c);
  return p;
}

MultiPoly MultiPoly::variable(const FieldDescriptor& f, unsigned n, unsigned j) {
  return term(f, Monomial::axis(n, j), Scalar::one(f));
}

std::uint64_t MultiPoly::degree() const {
  std::uint64_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::uint64_t MultiPoly::degree_in(unsigned var) const {
  if (var >= n_) throw std::invalid_argument("degree_in: variable out of range");
  std::uint64_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max<std::uint64_t>(d, m.e[var]);
  return d;
}

void MultiPoly::add_term(const Monomial& m, const Scalar& c) {
  if (m.nvars() != n_) throw std::invalid_argument("add_term: variable count mismatch");
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  Scalar s = it->second + c;
  if (s.is_zero())
    terms_.erase(it);
  else
    it->second = s;
}

Scalar MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(field_, n_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

MultiPoly MultiPoly::scaled(const Scalar& c) const {
  MultiPoly r(field_, n_);
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) {
    Scalar s = k * c;
    if (!s.is_zero()) r.terms_.emplace(m, s);
  }
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r(field_, n_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly r = constant(field_, n_, Scalar::one(field_));
  MultiPoly base(*this);
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  return n_ == o.n_ && field_ == o.field_ && terms_ == o.terms_;
}

Scalar MultiPoly::evaluate(const std::vector<Scalar>& point) const {
  if (point.size() != n_) throw std::invalid_argument("evaluate: point dimension mismatch");
  std::vector<std::uint32_t> maxe(n_, 0);
  for (const auto& [m, c] : terms_)
    for (unsigned j = 0; j < n_; ++j) maxe[j] = std::max(maxe[j], m.e[j]);
  std::vector<std::vector<Scalar>> pw(n_);
  for (unsigned j = 0; j < n_; ++j) {
    pw[j].reserve(maxe[j] + 1);
    pw[j].push_back(Scalar::one(field_));
    for (std::uint32_t k = 1; k <= maxe[j]; ++k) pw[j].push_back(pw[j].back() * point[j]);
  }
  Scalar acc = Scalar::zero(field_);
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (unsigned j = 0; j < n_; ++j)
      if (m.e[j]) t = t * pw[j][m.e[j]];
    acc = acc + t;
  }
  return acc;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!out.empty()) out += " + ";
    const Monomial& m = it->first;
    const Scalar& c = it->second;
    std::string vars;
    for (unsigned j = 0; j < n_; ++j) {
      if (!m.e[j]) continue;
      if (!vars.empty()) vars += "*";
      vars += "x" + std::to_string(j + 1);
      if (m.e[j] > 1) vars += "^" + std::to_string(m.e[j]);
    }
    if (vars.empty())
      out += c.str();
    else if (c.is_one())
      out += vars;
    else
      out += c.str() + "*" + vars;
  }
  return out;
}

namespace {

void parse_varpow(const std::string& tok, unsigned n, Monomial& mono) {
  std::size_t caret = tok.find('^');
  std::string var = tok.substr(0, caret == std::string::npos ? tok.size() : caret);
  unsigned long exp = 1;
  if (caret != std::string::npos) {
    std::string es = tok.substr(caret + 1);
    if (es.empty() || es.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad exponent: " + tok);
    exp = std::stoul(es);
  }
  unsigned idx = 0;
  if (var == "x" || var == "y" || var == "z") {
    idx = var == "x" ? 0 : (var == "y" ? 1 : 2);
  } else if (var.size() >= 2 && var[0] == 'x' &&
             var.find_first_not_of("0123456789", 1) == std::string::npos) {
    unsigned long k = std::stoul(var.substr(1));
    if (k == 0) throw std::invalid_argument("variables are numbered from 1: " + tok);
    idx = static_cast<unsigned>(k - 1);
  } else {
    throw std::invalid_argument("bad variable: " + tok);
  }
  if (idx >= n) throw std::invalid_argument("variable index exceeds dimension: " + tok);
  mono.e[idx] += static_cast<std::uint32_t>(exp);
}

}  // namespace

MultiPoly MultiPoly::parse(const FieldDescriptor& f, unsigned n, const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty polynomial text");

  MultiPoly out(f, n);
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t plus = s.find('+', pos);
    std::string termstr = s.substr(pos, plus == std::string::npos ? std::string::npos
                                                                  : plus - pos);
    if (termstr.empty()) throw std::invalid_argument("empty term in: " + text);
    Scalar coeff = Scalar::one(f);
    Monomial mono = Monomial::unit(n);
    std::size_t tpos = 0;
    bool any = false;
    while (tpos < termstr.size()) {
      std::size_t star = termstr.find('*', tpos);
      std::string tok = termstr.substr(
          tpos, star == std::string::npos ? std::string::npos : star - tpos);
      if (tok.empty()) throw std::invalid_argument("empty factor in: " + termstr);
      char c0 = tok[0];
      if (c0 == '-' || (c0 >= '0' && c0 <= '9')) {
        coeff = coeff * Scalar::parse(f, tok);
      } else {
        parse_varpow(tok, n, mono);
      }
      any = true;
      if (star == std::string::npos) break;
      tpos = star + 1;
    }
    if (!any) throw std::invalid_argument("empty term in: " + text);
    out.add_term(mono, coeff);
    if (plus == std::string::npos) break;
    pos = plus + 1;
    if (pos == s.size()) throw std::invalid_argument("trailing + in: " + text);
  }
  return out;
}

// ---------------------------------------------------------------------------

UniPoly::UniPoly(const FieldDescriptor& f, std::vector<Scalar> coeffs)
    : field_(f), c_(std::move(coeffs)) {
  trim();
}

UniPoly UniPoly::constant(const FieldDescriptor& f, const Scalar& c) {
  return UniPoly(f, std::vector<Scalar>{c});
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar UniPoly::coeff(std::size_t k) const {
  return k < c_.size() ? c_[k] : Scalar::zero(field_);
}

Scalar UniPoly::leading() const {
  if (c_.empty()) return Scalar::zero(field_);
  return c_.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = r[i] + c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = r[i] + c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] - o.c_[i];
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly(field_);
  std::vector<Scalar> r(c_.size() + o.c_.size() - 1, Scalar::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
  }
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::scaled(const Scalar& s) const {
  std::vector<Scalar> r(c_);
  for (auto& x : r) x = x * s;
  return UniPoly(field_, std::move(r));
}

Scalar UniPoly::evaluate(const Scalar& t) const {
  Scalar acc = Scalar::zero(field_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
  return acc;
}

UniPoly UniPoly::hasse(unsigned i) const {
  if (c_.size() <= i) return UniPoly(field_);
  std::vector<Scalar> r(c_.size() - i, Scalar::zero(field_));
  for (std::size_t k = i; k < c_.size(); ++k) {
    Scalar b = Scalar::from_mpz(field_, binomial(k, i));
    r[k - i] = b * c_[k];
  }
  return UniPoly(field_, std::move(r));
}

std::string UniPoly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += c_[k].str();
    } else {
      std::string v = k == 1 ? "t" : "t^" + std::to_string(k);
      out += c_[k].is_one() ? v : c_[k].str() + "*" + v;
    }
  }
  return out;
}

std::pair<UniPoly, UniPoly> unipoly_divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("unipoly_divmod: division by zero");
  const FieldDescriptor& f = a.field();
  UniPoly rem = a;
  if (a.degree() < b.degree()) return {UniPoly::zero(f), rem};
  std::vector<Scalar> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1,
                        Scalar::zero(f));
  Scalar binv = b.leading().inverse();
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
    Scalar factor = rem.leading() * binv;
    q[shift] = factor;
    std::vector<Scalar> sub(shift, Scalar::zero(f));
    for (const Scalar& bc : b.coeffs()) sub.push_back(bc * factor);
    rem = rem - UniPoly(f, std::move(sub));
  }
  return {UniPoly(f, std::move(q)), rem};
}

UniPoly unipoly_div_exact(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = unipoly_divmod(a, b);
  if (!r.is_zero()) throw std::invalid_argument("unipoly_div_exact: remainder nonzero");
  return q;
}

UniPoly unipoly_gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = unipoly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(a.leading().inverse());
}

UniPoly unipoly_derivative(const UniPoly& f) { return f.hasse(1); }

UniPoly unipoly_square_free(const UniPoly& f) {
  if (f.is_zero()) return f;
  UniPoly d = unipoly_derivative(f);
  if (d.is_zero()) return UniPoly::constant(f.field(), Scalar::one(f.field()));
  UniPoly g = unipoly_gcd(f, d);
  UniPoly q = unipoly_div_exact(f, g);
  if (q.is_zero()) return q;
  return q.scaled(q.leading().inverse());
}

// ---------------------------------------------------------------------------

MultiPoly hasse_derivative(const MultiPoly& f, const Monomial& i) {
  if (i.nvars() != f.nvars())
    throw std::invalid_argument("hasse_derivative: index dimension mismatch");
  MultiPoly out(f.field(), f.nvars());
  for (const auto& [m, c] : f.terms()) {
    if (!i.divides(m)) continue;
    mpz_class factor = 1;
    for (unsigned j = 0; j < f.nvars(); ++j)
      if (i.e[j]) factor *= binomial(m.e[j], i.e[j]);
    Scalar s = Scalar::from_mpz(f.field(), factor) * c;
    out.add_term(m / i, s);
  }
  return out;
}

std::vector<MultiPoly> gradient(const MultiPoly& f) {
  std::vector<MultiPoly> g;
  g.reserve(f.nvars());
  for (unsigned j = 0; j < f.nvars(); ++j)
    g.push_back(hasse_derivative(f, Monomial::axis(f.nvars(), j)));
  return g;
}

UniPoly restrict_to_line(const MultiPoly& f, const std::vector<Scalar>& v,
                         const std::vector<Scalar>& b) {
  unsigned n = f.nvars();
  if (v.size() != n || b.size() != n)
    throw std::invalid_argument("restrict_to_line: dimension mismatch");
  bool bz = true;
  for (const Scalar& s : b) bz = bz && s.is_zero();
  if (bz) throw std::invalid_argument("restrict_to_line: zero direction");

  const FieldDescriptor& fd = f.field();
  std::vector<std::uint32_t> maxe(n, 0);
  for (const auto& [m, c] : f.terms())
    for (unsigned j = 0; j < n; ++j) maxe[j] = std::max(maxe[j], m.e[j]);

  // pw[j][k] = (v_j + t b_j)^k
  std::vector<std::vector<UniPoly>> pw(n);
  for (unsigned j = 0; j < n; ++j) {
    UniPoly lin(fd, {v[j], b[j]});
    pw[j].push_back(UniPoly::constant(fd, Scalar::one(fd)));
    for (std::uint32_t k = 1; k <= maxe[j]; ++k) pw[j].push_back(pw[j].back() * lin);
  }

  UniPoly acc(fd);
  for (const auto& [m, c] : f.terms()) {
    UniPoly t = UniPoly::constant(fd, c);
    for (unsigned j = 0; j < n; ++j)
      if (m.e[j]) t = t * pw[j][m.e[j]];
    acc = acc + t;
  }
  return acc;
}

PthPowerStructure pth_power_structure(const MultiPoly& f) {
  if (!f.field().is_prime())
    throw std::invalid_argument("pth_power_structure: prime field required");
  const std::uint64_t p = f.field().p();
  if (f.is_zero() || f.degree() == 0) return {PthPowerKind::constant, std::nullopt};

  for (const MultiPoly& g : gradient(f))
    if (!g.is_zero()) return {PthPowerKind::nonzero_gradient, std::nullopt};

  MultiPoly root(f.field(), f.nvars());
  for (const auto& [m, c] : f.terms()) {
    Monomial q = m;
    for (unsigned j = 0; j < f.nvars(); ++j) {
      if (m.e[j] % p != 0)
        throw InvariantViolation(
            "vanishing gradient with an exponent not divisible by the characteristic");
      q.e[j] = static_cast<std::uint32_t>(m.e[j] / p);
    }
    // c^(1/p) = c: the Frobenius map fixes every element of the prime field.
    root.add_term(q, c);
  }
  return {PthPowerKind::power_root, std::move(root)};
}

// ---------------------------------------------------------------------------

namespace {

// f as a polynomial in x_var with MultiPoly coefficients (var-degree 0).
std::vector<MultiPoly> coeffs_in_var(const MultiPoly& f, unsigned var) {
  std::size_t d = static_cast<std::size_t>(f.degree_in(var));
  std::vector<MultiPoly> out(d + 1, MultiPoly::zero(f.field(), f.nvars()));
  for (const auto& [m, c] : f.terms()) {
    Monomial rest = m;
    std::uint32_t k = rest.e[var];
    rest.e[var] = 0;
    out[k].add_term(rest, c);
  }
  return out;
}

}  // namespace

std::vector<MultiPoly> sylvester_matrix(const MultiPoly& f, const MultiPoly& g,
                                        unsigned var) {
  std::size_t df = static_cast<std::size_t>(f.degree_in(var));
  std::size_t dg = static_cast<std::size_t>(g.degree_in(var));
  if (df == 0 || dg == 0)
    throw std::invalid_argument("sylvester_matrix: inputs need positive degree in the variable");
  std::vector<MultiPoly> A = coeffs_in_var(f, var);
  std::vector<MultiPoly> B = coeffs_in_var(g, var);
  std::size_t N = df + dg;
  std::vector<MultiPoly> S(N * N, MultiPoly::zero(f.field(), f.nvars()));
  for (std::size_t r = 0; r < dg; ++r)
    for (std::size_t j = 0; j <= df; ++j) S[r * N + r + j] = A[df - j];
  for (std::size_t r = 0; r < df; ++r)
    for (std::size_t j = 0; j <= dg; ++j) S[(dg + r) * N + r + j] = B[dg - j];
  return S;
}

MultiPoly multipoly_div_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("multipoly_div_exact: division by zero");
  if (b.terms().size() == 1 && b.terms().begin()->first.degree() == 0)
    return a.scaled(b.terms().begin()->second.inverse());
  MultiPoly rem = a;
  MultiPoly q(a.field(), a.nvars());
  const auto& bl = *b.terms().rbegin();  // leading term, grlex
  while (!rem.is_zero()) {
    const auto& rl = *rem.terms().rbegin();
    if (!bl.first.divides(rl.first))
      throw std::invalid_argument("multipoly_div_exact: not divisible");
    Monomial qm = rl.first / bl.first;
    Scalar qc = rl.second / bl.second;
    q.add_term(qm, qc);
    rem = rem - MultiPoly::term(a.field(), qm, qc) * b;
  }
  return q;
}

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, unsigned var) {
  std::vector<MultiPoly> S = sylvester_matrix(f, g, var);
  std::size_t N = static_cast<std::size_t>(f.degree_in(var)) +
                  static_cast<std::size_t>(g.degree_in(var));
  const FieldDescriptor& fd = f.field();
  unsigned n = f.nvars();
  MultiPoly one = MultiPoly::constant(fd, n, Scalar::one(fd));
  MultiPoly prev = one;
  bool negate = false;

  for (std::size_t k = 0; k + 1 < N; ++k) {
    if (S[k * N + k].is_zero()) {
      std::size_t swap_row = N;
      for (std::size_t i = k + 1; i < N; ++i) {
        if (!S[i * N + k].is_zero()) {
          swap_row = i;
          break;
        }
      }
      if (swap_row == N) return MultiPoly::zero(fd, n);
      for (std::size_t j = 0; j < N; ++j) std::swap(S[k * N + j], S[swap_row * N + j]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < N; ++i) {
      for (std::size_t j = k + 1; j < N; ++j) {
        MultiPoly num = S[i * N + j] * S[k * N + k] - S[i * N + k] * S[k * N + j];
        S[i * N + j] = multipoly_div_exact(num, prev);
      }
      S[i * N + k] = MultiPoly::zero(fd, n);
    }
    prev = S[k * N + k];
  }
  MultiPoly det = S[(N - 1) * N + (N - 1)];
  return negate ? -det : det;
}

MultiPoly determinant_cofactor(const std::vector<MultiPoly>& m, std::size_t dim) {
  if (m.size() != dim * dim)
    throw std::invalid_argument("determinant_cofactor: shape mismatch");
  if (dim == 0) throw std::invalid_argument("determinant_cofactor: empty matrix");
  if (dim == 1) return m[0];
  const FieldDescriptor& fd = m[0].field();
  unsigned n = m[0].nvars();
  MultiPoly det(fd, n);
  for (std::size_t c = 0; c < dim; ++c) {
    if (m[c].is_zero()) continue;
    std::vector<MultiPoly> sub;
    sub.reserve((dim - 1) * (dim - 1));
    for (std::size_t i = 1; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (j != c) sub.push_back(m[i * dim + j]);
    MultiPoly cof = m[c] * determinant_cofactor(sub, dim - 1);
    det = (c % 2 == 0) ? det + cof : det - cof;
  }
  return det;
}

MultiPoly square_free_part(const std::vector<std::pair<MultiPoly, unsigned>>& factors) {
  if (factors.empty()) throw std::invalid_argument("square_free_part: empty factor list");
  const FieldDescriptor& fd = factors[0].first.field();
  unsigned n = factors[0].first.nvars();
  std::vector<MultiPoly> distinct;
  for (const auto& [f, mult] : factors) {
    if (f.is_zero()) throw std::invalid_argument("square_free_part: zero factor");
    MultiPoly monic = f.scaled(f.terms().rbegin()->second.inverse());
    bool seen = false;
    for (const MultiPoly& d : distinct) seen = seen || d == monic;
    if (!seen) distinct.push_back(std::move(monic));
  }
  MultiPoly out = MultiPoly::constant(fd, n, Scalar::one(fd));
  for (const MultiPoly& d : distinct) out = out * d;
  return out;
}

}  // namespace jw
