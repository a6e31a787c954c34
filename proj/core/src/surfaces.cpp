// SPDX-License-Identifier: Apache-2.0

#include "jointwork/surfaces.hpp"

#include <stdexcept>

#include "jointwork/errors.hpp"
#include "jointwork/linalg.hpp"

namespace jw {

namespace {

void check_factor_list(const std::vector<std::pair<MultiPoly, unsigned>>& factors) {
  if (factors.empty()) throw std::invalid_argument("surface: empty factor list");
  for (const auto& [f, mult] : factors) {
    if (!f.field().is_rational() || f.nvars() != 3)
      throw std::invalid_argument("surface: factors must be trivariate over the rationals");
    if (mult == 0) throw std::invalid_argument("surface: zero multiplicity");
    if (f.is_zero()) throw std::invalid_argument("surface: zero factor");
  }
}

MultiPoly factor_product(const std::vector<std::pair<MultiPoly, unsigned>>& factors) {
  const FieldDescriptor& f = factors[0].first.field();
  MultiPoly prod = MultiPoly::constant(f, 3, Scalar::one(f));
  for (const auto& [fac, mult] : factors) prod = prod * fac.pow(mult);
  return prod;
}

// grad f x e_j for the three axis vectors.
std::array<MultiPoly, 3> cross_with_axis(const std::vector<MultiPoly>& g, unsigned j) {
  switch (j) {
    case 0: return {MultiPoly::zero(g[0].field(), 3), g[2], -g[1]};
    case 1: return {-g[2], MultiPoly::zero(g[0].field(), 3), g[0]};
    default: return {g[1], -g[0], MultiPoly::zero(g[0].field(), 3)};
  }
}

Scalar quad_at(const std::array<std::array<Scalar, 3>, 3>& h, const std::array<Scalar, 3>& a,
               const std::array<Scalar, 3>& b, const FieldDescriptor& f) {
  Scalar acc = Scalar::zero(f);
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned k = 0; k < 3; ++k) acc = acc + a[i] * h[i][k] * b[k];
  return acc;
}

}  // namespace

Surface Surface::from_factors(std::vector<std::pair<MultiPoly, unsigned>> factors) {
  check_factor_list(factors);
  MultiPoly prod = factor_product(factors);
  MultiPoly sf = square_free_part(factors);
  return Surface{std::move(prod), std::move(factors), std::move(sf)};
}

void Surface::validate() const {
  check_factor_list(factors);
  if (!(factor_product(factors) == poly))
    throw InvariantViolation("surface: factors do not multiply to the polynomial");
  if (!(square_free_part(factors) == sf))
    throw InvariantViolation("surface: stored square-free part is stale");
}

HessianMatrix hessian(const MultiPoly& f) {
  if (f.nvars() != 3) throw std::invalid_argument("hessian: three variables required");
  std::vector<MultiPoly> g = gradient(f);
  std::vector<std::vector<MultiPoly>> r;
  for (unsigned i = 0; i < 3; ++i) r.push_back(gradient(g[i]));
  return HessianMatrix{{{{r[0][0], r[0][1], r[0][2]},
                         {r[1][0], r[1][1], r[1][2]},
                         {r[2][0], r[2][1], r[2][2]}}}};
}

bool is_critical_line(const Surface& s, const Line& l) {
  if (l.dim() != 3 || !l.base.c[0].field().is_rational())
    throw std::invalid_argument("is_critical_line: line must be rational and trivariate");
  if (!restrict_to_line(s.sf, l.base.c, l.dir.c).is_zero()) return false;
  for (const MultiPoly& g : gradient(s.sf))
    if (!restrict_to_line(g, l.base.c, l.dir.c).is_zero()) return false;
  return true;
}

std::array<MultiPoly, 3> pi_polynomials(const Surface& s) {
  if (s.sf.degree() < 1)
    throw std::invalid_argument("pi_polynomials: constant surface");
  std::vector<MultiPoly> g = gradient(s.sf);
  HessianMatrix H = hessian(s.sf);
  std::array<MultiPoly, 3> out = {MultiPoly::zero(s.sf.field(), 3),
                                  MultiPoly::zero(s.sf.field(), 3),
                                  MultiPoly::zero(s.sf.field(), 3)};
  for (unsigned j = 0; j < 3; ++j) {
    std::array<MultiPoly, 3> v = cross_with_axis(g, j);
    MultiPoly acc = MultiPoly::zero(s.sf.field(), 3);
    for (unsigned i = 0; i < 3; ++i)
      for (unsigned k = 0; k < 3; ++k) acc = acc + v[i] * H.h[i][k] * v[k];
    // degree-1 surfaces have a zero Hessian, so any nonzero result is a bug
    if (!acc.is_zero() &&
        (s.sf.degree() < 2 || acc.degree() > 3 * s.sf.degree() - 4))
      throw InvariantViolation("pi_polynomials: degree bound exceeded");
    out[j] = std::move(acc);
  }
  return out;
}

FormVerdict second_form_vanishes_at(const Surface& s, const Point& x) {
  if (x.dim() != 3 || !x.c[0].field().is_rational())
    throw std::invalid_argument("second_form_vanishes_at: point must be rational, 3 coordinates");
  if (!s.poly.evaluate(x.c).is_zero())
    throw std::invalid_argument("second_form_vanishes_at: point is not on the surface");
  const FieldDescriptor& f = s.sf.field();

  std::array<Scalar, 3> gv = {Scalar::zero(f), Scalar::zero(f), Scalar::zero(f)};
  bool regular = false;
  std::vector<MultiPoly> g = gradient(s.sf);
  for (unsigned i = 0; i < 3; ++i) {
    gv[i] = g[i].evaluate(x.c);
    if (!gv[i].is_zero()) regular = true;
  }
  if (!regular) return FormVerdict::critical_point;

  Matrix row(f, 1, 3);
  for (unsigned i = 0; i < 3; ++i) row.at(0, i) = gv[i];
  std::vector<std::vector<Scalar>> basis = nullspace(row);
  if (basis.size() != 2)
    throw InvariantViolation("second_form_vanishes_at: tangent plane is not two dimensional");

  HessianMatrix H = hessian(s.sf);
  std::array<std::array<Scalar, 3>, 3> hv = {
      {{Scalar::zero(f), Scalar::zero(f), Scalar::zero(f)},
       {Scalar::zero(f), Scalar::zero(f), Scalar::zero(f)},
       {Scalar::zero(f), Scalar::zero(f), Scalar::zero(f)}}};
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j) hv[i][j] = H.h[i][j].evaluate(x.c);

  std::array<Scalar, 3> u = {basis[0][0], basis[0][1], basis[0][2]};
  std::array<Scalar, 3> w = {basis[1][0], basis[1][1], basis[1][2]};
  const bool flat = quad_at(hv, u, u, f).is_zero() && quad_at(hv, w, w, f).is_zero() &&
                    quad_at(hv, u, w, f).is_zero();
  return flat ? FormVerdict::vanishes : FormVerdict::nonzero;
}

bool is_flat_line(const Surface& s, const Line& l, unsigned samples) {
  if (l.dim() != 3 || !l.base.c[0].field().is_rational())
    throw std::invalid_argument("is_flat_line: line must be rational and trivariate");
  if (!restrict_to_line(s.poly, l.base.c, l.dir.c).is_zero())
    throw std::invalid_argument("is_flat_line: line is not contained in the surface");
  const std::uint64_t d = s.poly.degree();
  const std::uint64_t need = d >= 1 ? 3 * d - 3 : 0;
  if (samples < need)
    throw std::invalid_argument("is_flat_line: too few samples for the degree");

  const FieldDescriptor& f = s.sf.field();
  std::vector<MultiPoly> g = gradient(s.sf);
  std::uint64_t vanish = 0;
  std::uint64_t collected = 0;
  const std::uint64_t scan_limit = samples + s.sf.degree() + 3;
  for (std::uint64_t t = 0; t <= scan_limit && collected < samples; ++t) {
    Point at = line_at(l, Scalar::from_int(f, static_cast<long long>(t)));
    bool regular = false;
    for (const MultiPoly& gc : g)
      if (!gc.evaluate(at.c).is_zero()) {
        regular = true;
        break;
      }
    if (!regular) continue;  // critical parameter, shift past it
    ++collected;
    if (second_form_vanishes_at(s, at) == FormVerdict::vanishes) ++vanish;
  }
  return vanish >= need;
}

}  // namespace jw
