#pragma once

// The subfield-orbit detector and its exhaustive verifier.
//
// Walking the iterate sequence f^(n)(u), positions whose value lands in the
// subfield are recorded; gaps h between consecutive hit positions are
// histogrammed as A(h).  A gap k with A(k) > d^k certifies f^(k) in K[X]:
// f^(k) maps more than deg f^(k) subfield points into the subfield, so the
// Lagrange interpolation of f^(k) on those points already equals f^(k).
// Certification is symbolic (compose and inspect coefficients) while
// d^k stays under the degree cap, otherwise by evaluating the iterate at
// d^k + 1 subfield points.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ffdyn/errors.hpp"
#include "ffdyn/exponents.hpp"
#include "ffdyn/field.hpp"
#include "ffdyn/poly.hpp"
#include "ffdyn/rng.hpp"

namespace ffdyn {

struct GapHistogram {
  std::vector<std::uint64_t> hits;            // n_1 < ... < n_M
  std::map<std::uint64_t, std::uint64_t> counts;  // h -> A(h)
};

/// Builds the histogram and checks the two exact identities
/// sum A(h) = M - 1 and sum h*A(h) = n_M - n_1 <= N.
inline GapHistogram gap_histogram(std::vector<std::uint64_t> hit_positions,
                                  std::uint64_t N) {
  GapHistogram out;
  out.hits = std::move(hit_positions);
  std::uint64_t total = 0, weighted = 0;
  for (std::size_t i = 1; i < out.hits.size(); ++i) {
    std::uint64_t h = out.hits[i] - out.hits[i - 1];
    ++out.counts[h];
  }
  for (const auto& [h, a] : out.counts) {
    total += a;
    weighted += h * a;
  }
  std::uint64_t m = out.hits.size();
  check_invariant(total == (m ? m - 1 : 0), "sum A(h) != M - 1");
  if (m >= 2) {
    check_invariant(weighted == out.hits.back() - out.hits.front(),
                    "sum h*A(h) != n_M - n_1");
    check_invariant(weighted <= N, "gap mass exceeds the window");
  }
  return out;
}

enum class CertMethod { None, Symbolic, Evaluation };

struct DetectionResult {
  std::uint64_t hits_count = 0;
  double threshold = 0.0;
  bool threshold_met = false;
  std::optional<std::uint64_t> found_k;
  CertMethod method = CertMethod::None;
  bool within_orbit = true;  // N <= T_u, the range the guarantee covers
  std::uint64_t orbit_size = 0;
  std::uint64_t uncertifiable_candidates = 0;
  GapHistogram histogram;
};

/// Scans the window n in [0, N) of the iterate sequence (continued
/// periodically past T_u), histograms the subfield-hit gaps, and tries to
/// certify candidate gaps k with A(k) > d^k, largest A(k) first.
inline DetectionResult detect_subfield_iterate(
    const Field& F, const Poly& f, Elem u, std::uint32_t d_sub,
    std::uint64_t N, std::uint64_t degree_cap = kDefaultDegreeCap) {
  require(N >= 2, "detector needs N >= 2");
  require(f.degree() >= 1, "detector needs deg f >= 1");
  std::uint32_t d = static_cast<std::uint32_t>(f.degree());

  OrbitSummary orb = orbit(F, f, u);
  std::uint64_t T = orb.size();
  std::vector<std::uint8_t> in_sub(T);
  for (std::uint64_t i = 0; i < T; ++i)
    in_sub[i] = F.in_subfield(orb.elements[i], d_sub) ? 1 : 0;

  std::vector<std::uint64_t> hit_positions;
  for (std::uint64_t n = 0; n < N; ++n) {
    std::uint64_t idx =
        n < T ? n : orb.tail_len + (n - orb.tail_len) % orb.cycle_len;
    if (in_sub[idx]) hit_positions.push_back(n);
  }

  DetectionResult res;
  res.hits_count = hit_positions.size();
  res.threshold = freq_threshold(d, N);
  res.threshold_met = static_cast<double>(res.hits_count) >= res.threshold;
  res.within_orbit = N <= T;
  res.orbit_size = T;
  res.histogram = gap_histogram(std::move(hit_positions), N);

  // Candidate gaps with A(k) > d^k, ordered by A(k) descending then k.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> cands;  // (A(k), k)
  for (const auto& [k, a] : res.histogram.counts) {
    std::uint64_t dk = 1;
    bool overflow = false;
    for (std::uint64_t i = 0; i < k; ++i) {
      if (dk > a) {  // already too big to satisfy A(k) > d^k
        overflow = true;
        break;
      }
      dk *= d;
    }
    if (!overflow && a > dk) cands.emplace_back(a, k);
  }
  std::sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second < y.second;
  });

  ElemSet sub_pts;
  for (const auto& [a, k] : cands) {
    (void)a;
    std::uint64_t dk = 1;
    bool huge = false;
    for (std::uint64_t i = 0; i < k; ++i) {
      if (dk > (std::uint64_t{1} << 40) / d) {
        huge = true;
        break;
      }
      dk *= d;
    }
    std::uint64_t sub_size = 1;
    for (std::uint32_t i = 0; i < d_sub; ++i) sub_size *= F.p();
    if (!huge && dk <= degree_cap) {
      Poly fk = poly_iterate(F, f, k, degree_cap);
      if (poly_over_subfield(F, fk, d_sub)) {
        res.found_k = k;
        res.method = CertMethod::Symbolic;
        break;
      }
    } else if (!huge && dk + 1 <= sub_size) {
      if (sub_pts.universe() == 0) sub_pts = F.subfield(d_sub);
      std::uint64_t needed = dk + 1, seen = 0;
      bool all_in = true;
      std::vector<Elem> pts = sub_pts.to_vector();
      for (Elem w : pts) {
        if (seen == needed) break;
        ++seen;
        if (!F.in_subfield(iterate(F, f, w, k), d_sub)) {
          all_in = false;
          break;
        }
      }
      if (all_in && seen == needed) {
        res.found_k = k;
        res.method = CertMethod::Evaluation;
        break;
      }
    } else {
      // d^k too large both for composition and for the subfield to supply
      // d^k + 1 interpolation points; nothing can certify this gap.
      ++res.uncertifiable_candidates;
    }
  }
  return res;
}

struct VerifyOptions {
  bool monic = false;          // restrict the scan to monic tuples
  std::uint64_t degree_cap = kDefaultDegreeCap;
  std::uint64_t max_violations = 64;  // stored rows; counting continues
};

struct Violation {
  std::vector<Elem> coeffs;  // low degree first
  Elem u = 0;
  std::uint64_t N = 0;
  std::uint64_t hits = 0;
  double threshold = 0.0;
};

struct VerifyReport {
  std::uint32_t degree = 0;
  std::uint32_t d_sub = 0;
  bool monic = false;
  std::uint64_t polys = 0;
  std::uint64_t skipped_constant = 0;
  std::uint64_t pairs = 0;
  std::uint64_t instances = 0;  // (f, u, N) triples with 2 <= N <= T_u
  std::uint64_t vacuous = 0;    // threshold(N) > N: hypothesis unsatisfiable
  std::uint64_t met = 0;
  std::uint64_t certified = 0;
  std::uint64_t detector_calls = 0;
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;
};

/// Shared machinery for verification scans: per (f, u) it walks the orbit
/// with epoch-stamped scratch tables and checks every window 2 <= N <= T_u
/// of "hit count meets the threshold  =>  some iterate certified over the
/// subfield".  Tuples whose actual degree is zero lie outside the d >= 1
/// scope and are counted as skipped.
class VerifyEngine {
 public:
  VerifyEngine(const Field& F, std::uint32_t degree, std::uint32_t d_sub,
               const VerifyOptions& opts = {})
      : F_(F), opts_(opts), order_(F.order()) {
    require(degree >= 1, "verify needs degree >= 1");
    require(order_ <= (std::uint64_t{1} << 20),
            "verification scans are sized for desk-scale fields");
    rep_.degree = degree;
    rep_.d_sub = d_sub;
    rep_.monic = opts.monic;
    ElemSet sub = F.subfield(d_sub);
    in_sub_.assign(order_, 0);
    sub.for_each([&](Elem e) { in_sub_[e] = 1; });
    thr_.resize(degree + 1);
    all_vacuous_.assign(degree + 1, 1);
    for (std::uint32_t dd = 1; dd <= degree; ++dd) {
      thr_[dd].assign(order_ + 1, 0.0);
      for (std::uint64_t N = 2; N <= order_; ++N) {
        thr_[dd][N] = freq_threshold(dd, N);
        if (thr_[dd][N] <= static_cast<double>(N)) all_vacuous_[dd] = 0;
      }
    }
    visit_epoch_.assign(order_, 0);
    visit_pos_.assign(order_, 0);
    seq_.resize(order_ + 1);
    hit_prefix_.resize(order_ + 1);
  }

  /// coeffs has degree+1 entries, low degree first (top entries may be 0).
  void run_poly(const std::vector<Elem>& coeffs) {
    std::uint32_t eff_deg = 0;
    for (std::uint32_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i]) eff_deg = i;
    if (eff_deg < 1) {
      ++rep_.skipped_constant;
      return;
    }
    ++rep_.polys;
    for (std::uint64_t u = 0; u < order_; ++u)
      run_pair(coeffs, eff_deg, static_cast<Elem>(u));
  }

  const VerifyReport& report() const { return rep_; }

 private:
  void run_pair(const std::vector<Elem>& coeffs, std::uint32_t eff_deg,
                Elem u) {
    ++rep_.pairs;
    ++epoch_;
    Elem x = u;
    std::uint32_t pos = 0;
    while (visit_epoch_[x] != epoch_) {
      visit_epoch_[x] = epoch_;
      visit_pos_[x] = pos;
      seq_[pos++] = x;
      Elem acc = 0;
      for (std::uint32_t i = eff_deg + 1; i-- > 0;)
        acc = F_.add(F_.mul(acc, x), coeffs[i]);
      x = acc;
    }
    std::uint32_t T = pos;
    if (T < 2) return;  // no window 2 <= N <= T_u exists
    rep_.instances += T - 1;
    if (all_vacuous_[eff_deg]) {
      rep_.vacuous += T - 1;
      return;
    }
    hit_prefix_[0] = 0;
    for (std::uint32_t n = 0; n < T; ++n)
      hit_prefix_[n + 1] = hit_prefix_[n] + in_sub_[seq_[n]];
    for (std::uint64_t N = 2; N <= T; ++N) {
      double t = thr_[eff_deg][N];
      if (t > static_cast<double>(N)) {
        ++rep_.vacuous;
        continue;
      }
      if (static_cast<double>(hit_prefix_[N]) >= t) {
        ++rep_.met;
        Poly f(std::vector<Elem>(coeffs.begin(),
                                 coeffs.begin() + eff_deg + 1));
        ++rep_.detector_calls;
        DetectionResult det = detect_subfield_iterate(F_, f, u, rep_.d_sub, N,
                                                      opts_.degree_cap);
        if (det.found_k) {
          ++rep_.certified;
        } else {
          ++rep_.violation_count;
          if (rep_.violations.size() < opts_.max_violations)
            rep_.violations.push_back(Violation{f.c, u, N, hit_prefix_[N], t});
        }
      }
    }
  }

  const Field& F_;
  VerifyOptions opts_;
  std::uint64_t order_;
  VerifyReport rep_;
  std::vector<std::uint8_t> in_sub_;
  std::vector<std::vector<double>> thr_;
  std::vector<std::uint8_t> all_vacuous_;
  std::vector<std::uint32_t> visit_epoch_, visit_pos_;
  std::vector<Elem> seq_;
  std::vector<std::uint32_t> hit_prefix_;
  std::uint32_t epoch_ = 0;
};

/// Exhaustive scan over every coefficient tuple of length degree+1
/// (or degree with a forced leading 1, if monic), every starting point and
/// every window.
inline VerifyReport verify_subfield(const Field& F, std::uint32_t degree,
                                    std::uint32_t d_sub,
                                    const VerifyOptions& opts = {}) {
  std::uint64_t order = F.order();
  std::uint32_t tuple_len = opts.monic ? degree : degree + 1;
  std::uint64_t n_codes = 1;
  for (std::uint32_t i = 0; i < tuple_len; ++i) {
    if (n_codes > (std::uint64_t{1} << 32) / order)
      throw CapError("exhaustive verification space too large");
    n_codes *= order;
  }
  VerifyEngine engine(F, degree, d_sub, opts);
  std::vector<Elem> coeffs(degree + 1, 0);
  for (std::uint64_t code = 0; code < n_codes; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < tuple_len; ++i) {
      coeffs[i] = static_cast<Elem>(c % order);
      c /= order;
    }
    if (opts.monic) coeffs[degree] = 1;
    engine.run_poly(coeffs);
  }
  return engine.report();
}

/// Seeded scan over random degree-exact polynomials (leading coefficient
/// drawn nonzero).
inline VerifyReport verify_subfield_sampled(const Field& F,
                                            std::uint32_t degree,
                                            std::uint32_t d_sub,
                                            std::uint64_t samples,
                                            std::uint64_t seed,
                                            const VerifyOptions& opts = {}) {
  VerifyEngine engine(F, degree, d_sub, opts);
  SplitMix64 rng(seed);
  std::vector<Elem> coeffs(degree + 1, 0);
  for (std::uint64_t i = 0; i < samples; ++i) {
    for (std::uint32_t j = 0; j < degree; ++j)
      coeffs[j] = static_cast<Elem>(rng.below(F.order()));
    coeffs[degree] =
        opts.monic ? 1
                   : static_cast<Elem>(1 + rng.below(F.order() - 1));
    engine.run_poly(coeffs);
  }
  return engine.report();
}

}  // namespace ffdyn
