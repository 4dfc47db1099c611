#pragma once

// Measurement harnesses: expansion of 8-fold signed sumsets vs f(A)-f(A),
// dimension growth under polynomial images, subspace/image intersections
// with the proof's preimage-set inclusions, orbit runs inside subspaces,
// and the sum-ratio product measurement.  Bounds with unspecified absolute
// constants are reported, never asserted; the exact identities and
// inclusions that must hold are checked inline.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "ffdyn/elem_set.hpp"
#include "ffdyn/errors.hpp"
#include "ffdyn/exponents.hpp"
#include "ffdyn/field.hpp"
#include "ffdyn/linalg.hpp"
#include "ffdyn/poly.hpp"
#include "ffdyn/setcalc.hpp"

namespace ffdyn {

struct ExpansionReport {
  std::uint64_t M = 0;
  SetStats stats;
  std::uint64_t eight_card = 0;  // #(A+A+A+A-A-A-A-A)
  std::uint64_t fdiff_card = 0;  // #(f(A)-f(A))
  bool degenerate = false;       // M < 2: no exponent
  double measured_exponent = 0.0;
  ConditionReport condition;
};

/// max{#(8-fold signed sumset), #(f(A)-f(A))} as an exponent of #A, with
/// the difference-set subfield condition at exponent theta_d.
inline ExpansionReport expansion_experiment(
    const Field& F, const ElemSet& A, const Poly& f, const ExponentTable& tab,
    std::uint64_t work_cap = kDefaultWorkCap,
    const ConditionOptions& copts = {}) {
  int d = f.degree();
  require(d >= 2, "expansion needs deg f >= 2");
  require(static_cast<std::uint64_t>(d) < F.p(), "expansion needs p > deg f");
  ExpansionReport rep;
  rep.stats = set_stats(F, A, f, work_cap);
  rep.M = rep.stats.M;
  rep.eight_card = rep.stats.eight_card;
  rep.fdiff_card = rep.stats.fdiff_card;
  std::uint64_t top = std::max(rep.eight_card, rep.fdiff_card);
  if (rep.M >= 2) {
    rep.measured_exponent = std::log(static_cast<double>(top)) /
                            std::log(static_cast<double>(rep.M));
  } else {
    rep.degenerate = true;
  }
  ElemSet Adiff = diffset(F, A, A, work_cap);
  rep.condition = subfield_condition_check(
      F, Adiff, rep.M, tab.at(static_cast<std::uint32_t>(d)).theta, "set",
      copts);
  return rep;
}

struct PolyDimReport {
  std::uint32_t s = 0;
  std::uint32_t dim_image = 0;
  bool degenerate = false;  // s = 0: ratio undefined
  double ratio = 0.0;
  std::optional<ConditionReport> condition;  // d >= 2 only
};

/// dim f(A) / dim A for an affine subspace A, with the subspace condition
/// at exponent theta_d attached when the theorem's degree range applies.
inline PolyDimReport polydim_experiment(const Field& F,
                                        const AffineSubspace& A, const Poly& f,
                                        const ExponentTable& tab,
                                        std::uint64_t cap = kDefaultWorkCap,
                                        const ConditionOptions& copts = {}) {
  int d = f.degree();
  require(d >= 1, "dimension experiment needs deg f >= 1");
  require(static_cast<std::uint64_t>(d) < F.p(),
          "dimension experiment needs p > deg f");
  PolyDimReport rep;
  rep.s = A.dim();
  ElemSet pts = enumerate_affine(F, A, cap);
  ElemSet fA = image_set(F, f, pts);
  rep.dim_image = affine_hull(F, fA).dim();
  if (rep.s >= 1)
    rep.ratio = static_cast<double>(rep.dim_image) / rep.s;
  else
    rep.degenerate = true;
  if (d >= 2) {
    ElemSet L = enumerate_affine(F, AffineSubspace{0, A.basis}, cap);
    std::uint64_t qs = 1;
    for (std::uint32_t i = 0; i < rep.s; ++i) qs *= F.q();
    rep.condition = subfield_condition_check(
        F, L, qs, tab.at(static_cast<std::uint32_t>(d)).theta, "subspace",
        copts);
  }
  return rep;
}

struct IntersectionReport {
  std::uint32_t s = 0;
  std::uint64_t card_intersection = 0;
  double bound_exponent = 0.0;    // s * (1 - kappa_d)
  double measured_exponent = 0.0;  // log_q(#S) / s
  bool degenerate = false;
  bool in_theorem_range = true;  // p > deg f; the inclusions hold regardless
  ConditionReport condition;
  std::uint64_t preimage_card = 0;
};

/// #(A intersect f(A)) with the proof's preimage set A' (least preimage per
/// intersection point) and its inclusions checked exactly:
/// the 8-fold signed sumset of A' lies in L and f(A')-f(A') <= S-S <= L.
/// The inclusions are set algebra and hold in every characteristic; p > d
/// only scopes the theorem's bound, so it is recorded, not required.
inline IntersectionReport intersection_experiment(
    const Field& F, const AffineSubspace& A, const Poly& f,
    const ExponentTable& tab, std::uint64_t cap = kDefaultWorkCap,
    const ConditionOptions& copts = {}) {
  int d = f.degree();
  require(d >= 2, "intersection experiment needs deg f >= 2");
  IntersectionReport rep;
  rep.in_theorem_range = static_cast<std::uint64_t>(d) < F.p();
  rep.s = A.dim();
  ElemSet pts = enumerate_affine(F, A, cap);
  ElemSet fA = image_set(F, f, pts);
  ElemSet S = intersection(pts, fA);
  rep.card_intersection = S.card();

  // One preimage per intersection point, least index first.
  std::vector<std::uint8_t> claimed(F.order(), 0);
  ElemSet preimage(F.order());
  pts.for_each([&](Elem a) {
    Elem v = poly_eval(F, f, a);
    if (S.test(v) && !claimed[v]) {
      claimed[v] = 1;
      preimage.add(a);
    }
  });
  rep.preimage_card = preimage.card();
  check_invariant(rep.preimage_card == rep.card_intersection,
                  "preimage set misses an intersection point");

  ElemSet L = enumerate_affine(F, AffineSubspace{0, A.basis}, cap);
  if (!preimage.empty()) {
    ElemSet eight = signed_sumset(F, preimage, 4, 4, cap);
    check_invariant(eight.subset_of(L),
                    "8-fold signed sumset of the preimage set left L");
    ElemSet fpre = image_set(F, f, preimage);
    check_invariant(fpre == S, "f(preimage) != intersection");
    ElemSet fd = diffset(F, fpre, fpre, cap);
    ElemSet sd = diffset(F, S, S, cap);
    check_invariant(fd.subset_of(sd), "f(A')-f(A') escaped S-S");
    check_invariant(sd.subset_of(L), "S-S escaped L");
  }

  const auto& row = tab.at(static_cast<std::uint32_t>(d));
  BigRat one_minus_kappa = BigRat(1) - row.kappa;
  rep.bound_exponent = rep.s * mpq_get_d(one_minus_kappa.get_mpq_t());
  if (rep.s >= 1 && rep.card_intersection >= 1) {
    rep.measured_exponent =
        std::log(static_cast<double>(rep.card_intersection)) /
        (rep.s * std::log(static_cast<double>(F.q())));
  } else {
    rep.degenerate = true;
  }
  std::uint64_t qs = 1;
  for (std::uint32_t i = 0; i < rep.s; ++i) qs *= F.q();
  rep.condition =
      subfield_condition_check(F, L, qs, row.rho, "subspace", copts);
  return rep;
}

struct OrbitRunReport {
  std::uint64_t run_from_start = 0;   // N: f^(n)(u) in A for n = 0..N-1
  std::uint64_t longest_anywhere = 0;  // longest run in the periodic sequence
  std::uint64_t orbit_size = 0;
  std::uint64_t subspace_card = 0;  // q^s
  bool degenerate = false;          // run < 2: no exponent
  double exponent = 0.0;            // log(q^s) / log N
};

/// Longest initial run of orbit points inside the subspace, plus the
/// longest run anywhere in the periodic continuation (reported separately;
/// only the initial run feeds the headline exponent).
inline OrbitRunReport orbit_run_experiment(const Field& F, const Poly& f,
                                           Elem u, const AffineSubspace& A,
                                           std::uint64_t cap = kDefaultWorkCap) {
  OrbitRunReport rep;
  ElemSet pts = enumerate_affine(F, A, cap);
  rep.subspace_card = pts.card();
  OrbitSummary orb = orbit(F, f, u);
  rep.orbit_size = orb.size();
  std::uint64_t T = orb.size();
  std::vector<std::uint8_t> in_A(T);
  for (std::uint64_t i = 0; i < T; ++i) in_A[i] = pts.test(orb.elements[i]);

  while (rep.run_from_start < T && in_A[rep.run_from_start])
    ++rep.run_from_start;

  // Runs in the infinite sequence: linear runs, or a run wrapping from the
  // cycle's end back to its start.  A fully-hit cycle caps at T_u.
  bool cycle_all = true;
  for (std::uint64_t i = orb.tail_len; i < T; ++i)
    if (!in_A[i]) cycle_all = false;
  if (cycle_all && in_A.size() > 0) {
    rep.longest_anywhere = T;
  } else {
    std::uint64_t best = 0, cur = 0;
    for (std::uint64_t i = 0; i < T; ++i) {
      cur = in_A[i] ? cur + 1 : 0;
      best = std::max(best, cur);
    }
    if (T > 0 && in_A[T - 1] && orb.cycle_len > 0 && in_A[orb.tail_len]) {
      std::uint64_t suffix = 0;
      for (std::uint64_t i = T; i-- > 0 && in_A[i];) ++suffix;
      std::uint64_t prefix = 0;
      for (std::uint64_t i = orb.tail_len; i < T && in_A[i]; ++i) ++prefix;
      best = std::max(best, std::min(suffix + prefix, T));
    }
    rep.longest_anywhere = best;
  }

  if (rep.run_from_start >= 2) {
    rep.exponent = std::log(static_cast<double>(rep.subspace_card)) /
                   std::log(static_cast<double>(rep.run_from_start));
  } else {
    rep.degenerate = true;
  }
  return rep;
}

struct SpGenReport {
  std::uint64_t M = 0;
  std::uint64_t ratio_card = 0;
  std::uint64_t sum4_card = 0;
  BigInt lhs1;  // (#(A:A))^4 * (#(A+A+A+A))^5
  BigInt lhs2;  // (#(A:A))^5 * (#(A+A+A+A))^4
  BigInt rhs;   // (#A)^10
  bool zero_denominator_skipped = false;
  ConditionReport condition;
};

/// Exact big-integer measurement of the sum-ratio product quantities, with
/// the dilate condition on A itself at threshold #A/8.
inline SpGenReport sp_gen_measure(const Field& F, const ElemSet& A,
                                  std::uint64_t work_cap = kDefaultWorkCap,
                                  const ConditionOptions& copts = {}) {
  SpGenReport rep;
  rep.M = A.card();
  RatioSet rs = ratio_set(F, A, A, work_cap);
  rep.zero_denominator_skipped = rs.zero_denominator_skipped;
  rep.ratio_card = rs.set.card();
  rep.sum4_card = signed_sumset(F, A, 4, 0, work_cap).card();
  rep.lhs1 = big_pow(rep.ratio_card, 4) * big_pow(rep.sum4_card, 5);
  rep.lhs2 = big_pow(rep.ratio_card, 5) * big_pow(rep.sum4_card, 4);
  rep.rhs = big_pow(rep.M, 10);
  rep.condition =
      subfield_condition_check(F, A, rep.M, BigRat(0), "set", copts);
  return rep;
}

}  // namespace ffdyn
