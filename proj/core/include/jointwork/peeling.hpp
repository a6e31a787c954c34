// SPDX-License-Identifier: Apache-2.0
// Joint peeling with a machine-checkable certificate. Each step records the
// minimal vanishing degree of the surviving joints, removes the line with
// the fewest of them (ties broken by lowest id), and logs the removed
// points. The step count never exceeds the line count, every step removes
// at most its recorded degree, and the union of removals is the full joint
// set, which is how the transcript certifies |J| <= sum of step degrees
// <= L * max degree.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "jointwork/decimal.hpp"
#include "jointwork/geometry.hpp"

namespace jw {

struct PeelStep {
  std::size_t line_id = 0;
  unsigned degree_d = 0;  // minimal vanishing degree before this removal
  std::vector<Point> removed_points;
};

struct PeelingCertificate {
  std::vector<PeelStep> steps;
  std::size_t total_removed = 0;
  Dec observed_constant;  // |J| / (L * max step degree), 20 digits, 0 if no steps
  // Dyadic multiplicity census of the initial joints: (largest power of two
  // <= N, number of joints with that floor), ascending. The bound report has
  // no access to the arrangement, so the multiplicities travel here.
  std::vector<std::pair<mpz_class, std::size_t>> bucket_counts;
};

// Runs the peeling loop to exhaustion. Throws InvariantViolation if the
// line with fewest surviving joints ever carries more than the minimal
// vanishing degree.
PeelingCertificate peel(const Arrangement& arr);

struct CertificateCheck {
  bool valid = true;
  std::size_t step = 0;  // first failing step; == steps.size() for aggregate failures
  std::string reason;    // empty when valid
};

// Independent replay: recomputes the joints, walks the steps, recomputes
// the minimal vanishing degree of each replayed state, and rejects on the
// first mismatch. Also enforces full coverage, the recorded bucket counts,
// and |J| <= sum of degrees <= L * max degree.
CertificateCheck verify_certificate(const Arrangement& arr, const PeelingCertificate& cert);

struct BoundReport {
  Dec ratio;                 // |J| / L^(n/(n-1)), 20 digits
  bool bound_holds = false;  // |J|^(n-1) <= L^n, exact integer comparison
  // Per dyadic bucket: (N floor, |J_N| * N^(1/(n-1)) / L^(n/(n-1))).
  std::vector<std::pair<mpz_class, Dec>> bucket_ratios;
};

// Pre: cert verified against its arrangement, n >= 2.
BoundReport bound_report(const PeelingCertificate& cert, std::uint64_t L, unsigned n);

}  // namespace jw
