// SPDX-License-Identifier: Apache-2.0

#include "jointwork/peeling.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "jointwork/errors.hpp"
#include "jointwork/joints.hpp"
#include "jointwork/vanishing.hpp"

namespace jw {

namespace {

bool tracker_usable(const FieldDescriptor& f) {
  return f.is_prime() && f.p() < (1ULL << 31);
}

// Surviving joints and lines during a peel or a replay. Removing a joint
// touches only its own incident lines, so a whole-line removal costs time
// proportional to the joints on it.
struct LiveState {
  const Arrangement* arr;
  std::vector<JointRecord> joints;
  std::vector<std::vector<std::size_t>> on_line;  // line id -> joint indices
  std::vector<std::size_t> live_on_line;
  std::vector<char> joint_alive;
  std::vector<char> line_alive;
  std::size_t remaining = 0;
  std::optional<MinDegreeTracker> tracker;

  LiveState(const Arrangement& a, std::vector<JointRecord> js)
      : arr(&a), joints(std::move(js)) {
    const std::size_t L = arr->lines.size();
    on_line.assign(L, {});
    for (std::size_t i = 0; i < joints.size(); ++i)
      for (std::size_t lid : joints[i].line_ids) on_line[lid].push_back(i);
    live_on_line.assign(L, 0);
    for (std::size_t l = 0; l < L; ++l) live_on_line[l] = on_line[l].size();
    joint_alive.assign(joints.size(), 1);
    line_alive.assign(L, 1);
    remaining = joints.size();
    if (!joints.empty() && tracker_usable(arr->field)) {
      std::vector<Point> pts;
      pts.reserve(joints.size());
      for (const JointRecord& r : joints) pts.push_back(r.point);
      tracker.emplace(pts, arr->field);
    }
  }

  // Minimal vanishing degree of the surviving joints. Incremental over
  // word-size prime fields, recomputed from scratch otherwise.
  unsigned current_degree() const {
    if (tracker) return tracker->degree();
    std::vector<Point> pts;
    pts.reserve(remaining);
    for (std::size_t i = 0; i < joints.size(); ++i)
      if (joint_alive[i]) pts.push_back(joints[i].point);
    return minimal_vanishing_degree(pts, arr->field).degree;
  }

  void remove_joint(std::size_t idx) {
    joint_alive[idx] = 0;
    --remaining;
    for (std::size_t lid : joints[idx].line_ids) --live_on_line[lid];
    if (tracker) tracker->remove(idx);
  }
};

std::vector<std::pair<mpz_class, std::size_t>> dyadic_census(
    const std::vector<JointRecord>& joints) {
  std::map<mpz_class, std::size_t> census;
  for (const auto& [key, recs] : bucket(joints)) census[key.N_floor] += recs.size();
  return {census.begin(), census.end()};
}

}  // namespace

PeelingCertificate peel(const Arrangement& arr) {
  arr.validate();
  LiveState st(arr, find_joints(arr));
  const std::size_t L = arr.lines.size();

  PeelingCertificate cert;
  cert.bucket_counts = dyadic_census(st.joints);
  while (st.remaining > 0) {
    const unsigned d = st.current_degree();
    std::size_t best = L;
    for (std::size_t l = 0; l < L; ++l) {
      if (!st.line_alive[l]) continue;
      if (best == L || st.live_on_line[l] < st.live_on_line[best]) best = l;
    }
    if (best == L) throw InvariantViolation("peel: joints survive with no line left");
    if (st.live_on_line[best] > d)
      throw InvariantViolation("peel: the emptiest line exceeds the vanishing degree");

    PeelStep step;
    step.line_id = best;
    step.degree_d = d;
    std::vector<std::size_t> doomed;
    for (std::size_t idx : st.on_line[best])
      if (st.joint_alive[idx]) doomed.push_back(idx);
    for (std::size_t idx : doomed) {
      step.removed_points.push_back(st.joints[idx].point);
      st.remove_joint(idx);
    }
    st.line_alive[best] = 0;
    cert.steps.push_back(std::move(step));
  }

  cert.total_removed = st.joints.size();
  unsigned max_d = 0;
  for (const PeelStep& s : cert.steps) max_d = std::max(max_d, s.degree_d);
  if (cert.steps.empty() || max_d == 0) {
    cert.observed_constant = Dec::from_int(0, 20);
  } else {
    mpz_class den = mpz_class(static_cast<unsigned long>(L)) * max_d;
    cert.observed_constant =
        Dec::ratio(mpz_class(static_cast<unsigned long>(cert.total_removed)), den, 20);
  }
  return cert;
}

CertificateCheck verify_certificate(const Arrangement& arr, const PeelingCertificate& cert) {
  arr.validate();
  LiveState st(arr, find_joints(arr));
  const std::size_t L = arr.lines.size();
  auto fail = [](std::size_t k, const char* reason) {
    return CertificateCheck{false, k, reason};
  };

  std::map<Point, std::size_t, PointLess> index;
  for (std::size_t i = 0; i < st.joints.size(); ++i) index.emplace(st.joints[i].point, i);

  mpz_class degree_sum = 0;
  unsigned max_d = 0;
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    const PeelStep& stp = cert.steps[k];
    if (st.remaining == 0) return fail(k, "step appears after the joint set was exhausted");
    if (stp.line_id >= L) return fail(k, "line id out of range");
    if (!st.line_alive[stp.line_id]) return fail(k, "line removed twice");
    const unsigned d = st.current_degree();
    if (stp.degree_d != d) return fail(k, "degree claim does not match the recomputed minimum");
    if (stp.removed_points.size() > d) return fail(k, "more removals than the degree allows");
    for (const Point& p : stp.removed_points) {
      auto it = index.find(p);
      if (it == index.end()) return fail(k, "removed point is not a joint");
      if (!st.joint_alive[it->second]) return fail(k, "removed point was already removed");
      if (!point_on_line(p, arr.lines[stp.line_id]))
        return fail(k, "removed point misses the step's line");
      st.remove_joint(it->second);
    }
    st.line_alive[stp.line_id] = 0;
    degree_sum += d;
    max_d = std::max(max_d, d);
  }

  const std::size_t end = cert.steps.size();
  if (st.remaining > 0) return fail(end, "coverage: joints survive the replay");
  if (cert.total_removed != st.joints.size())
    return fail(end, "total_removed does not match the joint count");
  if (dyadic_census(st.joints) != cert.bucket_counts)
    return fail(end, "multiplicity buckets do not match");
  mpz_class total(static_cast<unsigned long>(st.joints.size()));
  if (total > degree_sum || degree_sum > mpz_class(static_cast<unsigned long>(L)) * max_d)
    return fail(end, "aggregate degree bound fails");
  return {};
}

BoundReport bound_report(const PeelingCertificate& cert, std::uint64_t L, unsigned n) {
  if (n < 2) throw std::invalid_argument("bound_report: dimension must be at least 2");
  BoundReport rep;
  if (L == 0) {
    rep.ratio = Dec::from_int(0, 20);
    rep.bound_holds = cert.total_removed == 0;
    return rep;
  }
  mpz_class Ln;
  mpz_ui_pow_ui(Ln.get_mpz_t(), L, n);
  mpz_class J(static_cast<unsigned long>(cert.total_removed));
  mpz_class Jpow;
  mpz_pow_ui(Jpow.get_mpz_t(), J.get_mpz_t(), n - 1);
  rep.ratio = Dec::root_ratio(Jpow, Ln, n - 1, 20);
  rep.bound_holds = Jpow <= Ln;
  for (const auto& [nf, count] : cert.bucket_counts) {
    mpz_class c(static_cast<unsigned long>(count));
    mpz_class cpow;
    mpz_pow_ui(cpow.get_mpz_t(), c.get_mpz_t(), n - 1);
    rep.bucket_ratios.emplace_back(nf, Dec::root_ratio(cpow * nf, Ln, n - 1, 20));
  }
  return rep;
}

}  // namespace jw
