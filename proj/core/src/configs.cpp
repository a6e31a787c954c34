// SPDX-License-Identifier: Apache-2.0

#include "jointwork/configs.hpp"

#include <set>
#include <stdexcept>

#include "jointwork/rng.hpp"

namespace jw {

Arrangement gen_star(std::uint64_t L, unsigned n, const FieldDescriptor& field) {
  if (n < 2) throw std::invalid_argument("gen_star: dimension must be at least 2");
  if (L < n) throw std::invalid_argument("gen_star: need at least n lines");
  if (field.is_prime() && field.p() < L)
    throw std::invalid_argument("gen_star: field too small for distinct curve parameters");

  Arrangement arr;
  arr.field = field;
  arr.n = n;
  Point origin(std::vector<Scalar>(n, Scalar::zero(field)));
  for (std::uint64_t t = 0; t < L; ++t) {
    Scalar ts = Scalar::from_int(field, static_cast<long long>(t));
    std::vector<Scalar> dir;
    dir.reserve(n);
    Scalar cur = Scalar::one(field);
    for (unsigned k = 0; k < n; ++k) {
      dir.push_back(cur);
      cur = cur * ts;
    }
    arr.lines.push_back(canonicalize_line(origin, dir));
  }
  arr.validate();
  return arr;
}

Arrangement gen_grid(std::uint64_t N, unsigned n, const FieldDescriptor& field) {
  if (n < 2) throw std::invalid_argument("gen_grid: dimension must be at least 2");
  if (N < 1) throw std::invalid_argument("gen_grid: side must be positive");
  if (field.is_prime() && N > field.p())
    throw std::invalid_argument("gen_grid: grid side exceeds the field size");

  Arrangement arr;
  arr.field = field;
  arr.n = n;
  for (unsigned axis = 0; axis < n; ++axis) {
    std::vector<Scalar> dir(n, Scalar::zero(field));
    dir[axis] = Scalar::one(field);
    // Odometer over the n-1 transversal coordinates, lexicographic.
    std::vector<std::uint64_t> idx(n - 1, 0);
    for (;;) {
      std::vector<Scalar> base(n, Scalar::zero(field));
      unsigned pos = 0;
      for (unsigned j = 0; j < n; ++j) {
        if (j == axis) continue;
        base[j] = Scalar::from_int(field, static_cast<long long>(idx[pos++]));
      }
      arr.lines.push_back(canonicalize_line(Point(std::move(base)), dir));
      unsigned carry = n - 1;
      while (carry > 0) {
        if (++idx[carry - 1] < N) break;
        idx[carry - 1] = 0;
        --carry;
      }
      if (carry == 0) break;
    }
  }
  arr.validate();
  return arr;
}

std::array<Arrangement, 3> gen_coplanar_lattice(std::uint64_t L) {
  if (L < 1) throw std::invalid_argument("gen_coplanar_lattice: L must be positive");
  const FieldDescriptor f = FieldDescriptor::rat();
  auto mk = [&](long long x, long long y, long long dx, long long dy) {
    std::vector<Scalar> base{Scalar::from_int(f, x), Scalar::from_int(f, y),
                             Scalar::zero(f)};
    std::vector<Scalar> dir{Scalar::from_int(f, dx), Scalar::from_int(f, dy),
                            Scalar::zero(f)};
    return canonicalize_line(Point(std::move(base)), dir);
  };

  Arrangement vertical, horizontal, diagonal;
  for (Arrangement* a : {&vertical, &horizontal, &diagonal}) {
    a->field = f;
    a->n = 3;
  }
  for (std::uint64_t i = 0; i < L; ++i) {
    vertical.lines.push_back(mk(static_cast<long long>(i), 0, 0, 1));
    horizontal.lines.push_back(mk(0, static_cast<long long>(i), 1, 0));
  }
  // x + y = c for c = 0 .. 2L-2 covers every lattice point once.
  for (std::uint64_t c = 0; c + 1 < 2 * L; ++c)
    diagonal.lines.push_back(mk(0, static_cast<long long>(c), 1, -1));
  for (Arrangement* a : {&vertical, &horizontal, &diagonal}) a->validate();
  return {std::move(vertical), std::move(horizontal), std::move(diagonal)};
}

std::array<Arrangement, 3> gen_grid_multijoint(std::uint64_t N) {
  Arrangement whole = gen_grid(N, 3, FieldDescriptor::rat());
  std::array<Arrangement, 3> out;
  const std::size_t per_axis = whole.lines.size() / 3;
  for (unsigned axis = 0; axis < 3; ++axis) {
    out[axis].field = whole.field;
    out[axis].n = 3;
    out[axis].lines.assign(whole.lines.begin() + axis * per_axis,
                           whole.lines.begin() + (axis + 1) * per_axis);
    out[axis].validate();
  }
  return out;
}

namespace {

mpz_class total_lines(std::uint64_t p, unsigned n) {
  // p^(n-1) parallel classes per direction, (p^n - 1)/(p - 1) directions.
  mpz_class pz = static_cast<unsigned long>(p);
  mpz_class pn;
  mpz_pow_ui(pn.get_mpz_t(), pz.get_mpz_t(), n);
  mpz_class pn1;
  mpz_pow_ui(pn1.get_mpz_t(), pz.get_mpz_t(), n - 1);
  return pn1 * ((pn - 1) / (pz - 1));
}

}  // namespace

Arrangement gen_random(std::uint64_t L, unsigned n, const FieldDescriptor& field,
                       std::uint64_t seed) {
  if (!field.is_prime()) throw std::invalid_argument("gen_random: prime field required");
  if (n < 2) throw std::invalid_argument("gen_random: dimension must be at least 2");
  const std::uint64_t p = field.p();
  if (mpz_class(static_cast<unsigned long>(L)) > total_lines(p, n))
    throw std::invalid_argument("gen_random: more lines requested than the space holds");

  Arrangement arr;
  arr.field = field;
  arr.n = n;
  Rng rng(seed);
  std::set<Line, LineLess> seen;
  while (seen.size() < L) {
    // A uniform nonzero vector hits each canonical direction equally often;
    // a uniform point hits each base of that direction equally often.
    std::vector<Scalar> dir(n);
    bool zero = true;
    for (unsigned j = 0; j < n; ++j) {
      std::uint64_t v = rng.below(p);
      zero = zero && v == 0;
      dir[j] = Scalar::from_int(field, static_cast<long long>(v));
    }
    if (zero) continue;
    std::vector<Scalar> base(n);
    for (unsigned j = 0; j < n; ++j)
      base[j] = Scalar::from_int(field, static_cast<long long>(rng.below(p)));
    Line l = canonicalize_line(Point(std::move(base)), dir);
    if (seen.insert(l).second) arr.lines.push_back(std::move(l));
  }
  arr.validate();
  return arr;
}

Arrangement generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::star:
      return gen_star(spec.count, spec.n, spec.field);
    case GeneratorSpec::Kind::grid:
      return gen_grid(spec.count, spec.n, spec.field);
    case GeneratorSpec::Kind::random:
      return gen_random(spec.count, spec.n, spec.field, spec.seed);
    case GeneratorSpec::Kind::coplanar_lattice:
    case GeneratorSpec::Kind::grid_multijoint:
      throw std::invalid_argument(
          "generate: this kind produces three collections; use its typed entry point");
  }
  throw std::invalid_argument("generate: unknown kind");
}

}  // namespace jw
