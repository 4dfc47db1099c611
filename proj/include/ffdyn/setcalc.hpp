#pragma once

// Dense set calculus over F: signed k-fold sumsets, ratio sets, restricted
// pair-sets, dilates, the alpha/beta/gamma/xi statistics, popular
// differences and the Plunnecke-Ruzsa check.  Sets live in membership
// bit-tables; in characteristic 2 translation is an XOR permutation, which
// sum/difference sets exploit word-wise.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "ffdyn/elem_set.hpp"
#include "ffdyn/errors.hpp"
#include "ffdyn/field.hpp"
#include "ffdyn/poly.hpp"
#include "ffdyn/rational.hpp"

namespace ffdyn {

namespace detail {

// Destination bit i of the result is source bit i ^ t.  Valid because the
// universe of a characteristic-2 field is a power of two.
inline void xor_translate(const std::vector<std::uint64_t>& src,
                          std::vector<std::uint64_t>& dst, std::uint32_t t) {
  static constexpr std::uint64_t kMask[6] = {
      0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
      0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL};
  std::uint32_t lo = t & 63, hi = t >> 6;
  for (std::size_t i = 0; i < src.size(); ++i) {
    std::uint64_t w = src[i];
    for (unsigned b = 0; b < 6; ++b) {
      if (lo & (1u << b)) {
        unsigned s = 1u << b;
        w = ((w & kMask[b]) << s) | ((w >> s) & kMask[b]);
      }
    }
    dst[i ^ hi] = w;
  }
}

}  // namespace detail

inline void check_set_work(std::uint64_t a, std::uint64_t b,
                           std::uint64_t cap) {
  if (b != 0 && a > cap / b) throw CapError("set operation work cap exceeded");
}

inline ElemSet negate_set(const Field& F, const ElemSet& A) {
  if (F.p() == 2) return A;
  ElemSet out(F.order());
  A.for_each([&](Elem a) { out.add(F.neg(a)); });
  return out;
}

/// {a + b : a in A, b in B}.
inline ElemSet sumset(const Field& F, const ElemSet& A, const ElemSet& B,
                      std::uint64_t work_cap = kDefaultWorkCap) {
  check_set_work(A.card(), B.card(), work_cap);
  ElemSet out(F.order());
  if (A.empty() || B.empty()) return out;
  if (F.p() == 2) {
    std::vector<std::uint64_t> words(B.words().size(), 0);
    std::vector<std::uint64_t> acc(B.words().size(), 0);
    A.for_each([&](Elem a) {
      detail::xor_translate(B.words(), words, a);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] |= words[i];
    });
    ElemSet r(F.order());
    for (std::size_t w = 0; w < acc.size(); ++w) {
      std::uint64_t bits = acc[w];
      while (bits) {
        unsigned b = static_cast<unsigned>(__builtin_ctzll(bits));
        r.add(static_cast<Elem>(w * 64 + b));
        bits &= bits - 1;
      }
    }
    return r;
  }
  A.for_each([&](Elem a) {
    B.for_each([&](Elem b) { out.add(F.add(a, b)); });
  });
  return out;
}

/// {a - b : a in A, b in B}.
inline ElemSet diffset(const Field& F, const ElemSet& A, const ElemSet& B,
                       std::uint64_t work_cap = kDefaultWorkCap) {
  if (F.p() == 2) return sumset(F, A, B, work_cap);
  check_set_work(A.card(), B.card(), work_cap);
  ElemSet out(F.order());
  A.for_each([&](Elem a) {
    B.for_each([&](Elem b) { out.add(F.sub(a, b)); });
  });
  return out;
}

/// {a_1 + ... + a_kp - b_1 - ... - b_km : a_i, b_j in A}, by iterated
/// pairwise convolution of membership tables.
inline ElemSet signed_sumset(const Field& F, const ElemSet& A,
                             std::uint32_t k_plus, std::uint32_t k_minus,
                             std::uint64_t work_cap = kDefaultWorkCap) {
  require(k_plus + k_minus >= 1, "signed sumset needs k_plus + k_minus >= 1");
  if (A.empty()) return ElemSet(F.order());
  ElemSet cur(F.order());
  bool started = false;
  for (std::uint32_t i = 0; i < k_plus; ++i) {
    cur = started ? sumset(F, cur, A, work_cap) : A;
    started = true;
  }
  if (k_minus > 0) {
    ElemSet negA = negate_set(F, A);
    for (std::uint32_t i = 0; i < k_minus; ++i) {
      cur = started ? sumset(F, cur, negA, work_cap) : negA;
      started = true;
    }
  }
  return cur;
}

struct RatioSet {
  ElemSet set;
  bool zero_denominator_skipped = false;
};

/// A : B = {a/b : a in A, b in B \ {0}}.  A zero in B is skipped and
/// flagged for the report.
inline RatioSet ratio_set(const Field& F, const ElemSet& A, const ElemSet& B,
                          std::uint64_t work_cap = kDefaultWorkCap) {
  RatioSet out{ElemSet(F.order()), B.test(0)};
  std::uint64_t denoms = B.card() - (out.zero_denominator_skipped ? 1 : 0);
  require(denoms >= 1, "ratio set needs a nonzero denominator");
  check_set_work(A.card(), denoms, work_cap);
  B.for_each([&](Elem b) {
    if (b == 0) return;
    Elem binv = F.inv(b);
    A.for_each([&](Elem a) { out.set.add(F.mul(a, binv)); });
  });
  return out;
}

/// {a*g : g in G}.
inline ElemSet dilate(const Field& F, Elem a, const ElemSet& G) {
  ElemSet out(F.order());
  G.for_each([&](Elem g) { out.add(F.mul(a, g)); });
  return out;
}

struct PairRelation {
  ElemSet U, V;                              // declared ambient
  std::vector<std::pair<Elem, Elem>> pairs;  // sorted, duplicate-free
};

inline PairRelation make_pair_relation(
    const Field& F, ElemSet U, ElemSet V,
    std::vector<std::pair<Elem, Elem>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  auto last = std::unique(pairs.begin(), pairs.end());
  pairs.erase(last, pairs.end());
  for (const auto& [a, b] : pairs)
    require(U.test(a) && V.test(b), "pair outside the declared ambient");
  (void)F;
  return PairRelation{std::move(U), std::move(V), std::move(pairs)};
}

enum class PairOp { Diff, Ratio };

/// Image of the relation under a - b or a / b.
inline ElemSet restricted_pairs(const Field& F, const PairRelation& E,
                                PairOp op) {
  ElemSet out(F.order());
  for (const auto& [a, b] : E.pairs) {
    if (op == PairOp::Ratio) {
      require(b != 0, "restricted ratio set hit a zero denominator");
      out.add(F.div(a, b));
    } else {
      out.add(F.sub(a, b));
    }
  }
  return out;
}

/// E = {(x-y, (x+y+b)^{-1}) : x, y in A, x+y+b != 0}, over U = A - A and
/// V = (A+A+b)^{-1}.  Odd characteristic only: for p > 2 distinct (x, y)
/// give distinct pairs, hence #E >= M^2 - M.
inline PairRelation bsg_pair_relation(const Field& F, const ElemSet& A,
                                      Elem b) {
  require(F.p() > 2,
          "pair relation needs p > 2 (distinctness fails in char 2)");
  std::vector<Elem> elems = A.to_vector();
  ElemSet V(F.order());
  std::vector<std::pair<Elem, Elem>> pairs;
  pairs.reserve(elems.size() * elems.size());
  for (Elem x : elems) {
    for (Elem y : elems) {
      Elem s = F.add(F.add(x, y), b);
      if (s == 0) continue;
      Elem second = F.inv(s);
      pairs.emplace_back(F.sub(x, y), second);
      V.add(second);
    }
  }
  std::size_t raw = pairs.size();
  std::sort(pairs.begin(), pairs.end());
  auto last = std::unique(pairs.begin(), pairs.end());
  pairs.erase(last, pairs.end());
  check_invariant(pairs.size() == raw,
                  "duplicate pairs in the restricted relation (p > 2)");
  std::uint64_t M = A.card();
  check_invariant(pairs.size() + M >= M * M,
                  "#E >= M^2 - M failed");
  ElemSet U = diffset(F, A, A);
  return PairRelation{std::move(U), std::move(V), std::move(pairs)};
}

struct PopularDifference {
  Elem t = 0;
  std::uint64_t count = 0;
};

/// Nonzero t maximizing r(t) = #{(x,y) in A^2 : x - y = t}; ties broken by
/// least index.  The pigeonhole bound count*(#(A-A)-1) >= M^2 - M holds.
inline PopularDifference popular_difference(const Field& F,
                                            const ElemSet& A) {
  require(A.card() >= 2, "popular difference needs #A >= 2");
  std::vector<std::uint32_t> counts(F.order(), 0);
  std::vector<Elem> elems = A.to_vector();
  for (Elem x : elems)
    for (Elem y : elems) ++counts[F.sub(x, y)];
  PopularDifference best;
  std::uint64_t distinct = 0;
  for (std::uint64_t t = 0; t < F.order(); ++t) {
    if (counts[t]) ++distinct;
    if (t != 0 && counts[t] > best.count) {
      best.t = static_cast<Elem>(t);
      best.count = counts[t];
    }
  }
  std::uint64_t M = A.card();
  check_invariant(best.count * (distinct - 1) >= M * M - M,
                  "popular difference below the pigeonhole bound");
  return best;
}

struct SetStats {
  std::uint64_t M = 0;
  BigRat alpha, beta, gamma, xi;
  std::uint64_t plus_card = 0, diff_card = 0, eight_card = 0, fdiff_card = 0;
};

/// alpha = #(A+A)/M, beta = #(A-A)/M, gamma = #(4A-4A)/M, xi = #(f(A)-f(A))/M.
inline SetStats set_stats(const Field& F, const ElemSet& A, const Poly& f,
                          std::uint64_t work_cap = kDefaultWorkCap) {
  require(A.card() >= 1, "statistics need a nonempty set");
  SetStats s;
  s.M = A.card();
  s.plus_card = sumset(F, A, A, work_cap).card();
  s.diff_card = diffset(F, A, A, work_cap).card();
  s.eight_card = signed_sumset(F, A, 4, 4, work_cap).card();
  ElemSet fA = image_set(F, f, A);
  s.fdiff_card = diffset(F, fA, fA, work_cap).card();
  auto ratio = [&](std::uint64_t c) {
    BigRat r(to_big(c), to_big(s.M));
    r.canonicalize();
    return r;
  };
  s.alpha = ratio(s.plus_card);
  s.beta = ratio(s.diff_card);
  s.gamma = ratio(s.eight_card);
  s.xi = ratio(s.fdiff_card);
  check_invariant(s.alpha <= s.gamma && s.beta <= s.gamma,
                  "alpha, beta <= gamma failed");
  return s;
}

struct PRReport {
  std::uint64_t lhs = 0;  // #(U+U-U-U)
  BigRat rhs;             // (#(U-U)/#U)^4 * #U
  bool holds = false;     // lhs <= rhs, decided exactly
};

/// Standard Plunnecke-Ruzsa form #(U+U-U-U) <= (#(U-U)/#U)^4 * #U.
inline PRReport plunnecke_check(const Field& F, const ElemSet& U,
                                std::uint64_t work_cap = kDefaultWorkCap) {
  require(U.card() >= 1, "Plunnecke check needs a nonempty set");
  PRReport out;
  out.lhs = signed_sumset(F, U, 2, 2, work_cap).card();
  std::uint64_t dcard = diffset(F, U, U, work_cap).card();
  BigInt d4 = big_pow(dcard, 4);
  BigInt u3 = big_pow(U.card(), 3);
  out.rhs = BigRat(d4, u3);
  out.rhs.canonicalize();
  out.holds = to_big(out.lhs) * u3 <= d4;
  return out;
}

}  // namespace ffdyn
