// SPDX-License-Identifier: Apache-2.0
// Critical and flat line analysis for trivariate surfaces over the
// rationals. The second-fundamental-form test evaluates the full quadratic
// form on an exact tangent basis, polarization included; the Pi polynomials
// are kept as the symbolic diagnostic. The two do not always agree: on the
// ruling {(t,0,0)} of z - xy every Pi vanishes while the polarized form
// does not, so the form test is the authoritative one.

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "jointwork/geometry.hpp"
#include "jointwork/poly.hpp"

namespace jw {

struct Surface {
  MultiPoly poly;                                    // product of the factors
  std::vector<std::pair<MultiPoly, unsigned>> factors;  // (factor, multiplicity)
  MultiPoly sf;                                      // square-free part

  // Builds poly and sf from a nonempty factor list of trivariate rational
  // polynomials with multiplicities >= 1.
  static Surface from_factors(std::vector<std::pair<MultiPoly, unsigned>> factors);
  // Recomputes both derived fields and throws InvariantViolation on mismatch.
  void validate() const;
};

// Symmetric matrix of iterated first-order Hasse derivatives; equals the
// classical Hessian over the rationals.
struct HessianMatrix {
  std::array<std::array<MultiPoly, 3>, 3> h;
};

HessianMatrix hessian(const MultiPoly& f);

// True iff the square-free part and all three of its gradient components
// restrict to the zero polynomial on l, symbolically.
bool is_critical_line(const Surface& s, const Line& l);

// Pi_j = (grad sf x e_j)^T H_sf (grad sf x e_j), j = 1,2,3. Each nonzero
// result has degree <= 3 deg(sf) - 4, checked. Requires deg(sf) >= 1.
std::array<MultiPoly, 3> pi_polynomials(const Surface& s);

enum class FormVerdict { vanishes, nonzero, critical_point };

// Exact second-fundamental-form test at a surface point: critical_point if
// the gradient of sf vanishes there, otherwise `vanishes` iff u^T H u,
// w^T H w, and the polarized u^T H w are all zero on an exact tangent basis
// (u, w). Throws if x is not on the surface.
FormVerdict second_form_vanishes_at(const Surface& s, const Point& x);

// Samples `samples` regular points of l (integer parameters, skipping any
// where the gradient vanishes) and reports whether at least
// 3 deg(poly) - 3 of them carry a vanishing form. Requires l inside the
// zero set and samples >= 3 deg(poly) - 3.
bool is_flat_line(const Surface& s, const Line& l, unsigned samples);

}  // namespace jw
