#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffdyn/report.hpp"
#include "ffdyn/rng.hpp"
#include "ffdyn/setcalc.hpp"

using namespace ffdyn;

namespace {

Field f5_oracle() {
  FieldOptions o;
  o.allow_r1 = true;
  return Field(5, 1, 1, o);
}

Field f7_oracle() {
  FieldOptions o;
  o.allow_r1 = true;
  return Field(7, 1, 1, o);
}

ElemSet random_set(const Field& F, SplitMix64& rng, std::uint64_t size) {
  ElemSet s(F.order());
  while (s.card() < size) s.add(static_cast<Elem>(rng.below(F.order())));
  return s;
}

// Independent full-enumeration oracles over sorted index vectors.
ElemSet oracle_sumset(const Field& F, const ElemSet& A, const ElemSet& B) {
  ElemSet out(F.order());
  for (Elem a : A.to_vector())
    for (Elem b : B.to_vector()) out.add(F.add(a, b));
  return out;
}

ElemSet oracle_signed(const Field& F, const ElemSet& A, std::uint32_t kp,
                      std::uint32_t km) {
  std::vector<Elem> acc{0};
  auto fold = [&](bool plus) {
    std::vector<Elem> next;
    for (Elem s : acc)
      for (Elem a : A.to_vector())
        next.push_back(plus ? F.add(s, a) : F.sub(s, a));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    acc = std::move(next);
  };
  for (std::uint32_t i = 0; i < kp; ++i) fold(true);
  for (std::uint32_t i = 0; i < km; ++i) fold(false);
  ElemSet out(F.order());
  for (Elem e : acc) out.add(e);
  return out;
}

ElemSet oracle_ratio(const Field& F, const ElemSet& A, const ElemSet& B) {
  ElemSet out(F.order());
  for (Elem a : A.to_vector())
    for (Elem b : B.to_vector())
      if (b != 0) out.add(F.div(a, b));
  return out;
}

ElemSet oracle_image(const Field& F, const Poly& f, const ElemSet& A) {
  ElemSet out(F.order());
  for (Elem a : A.to_vector()) {
    Elem acc = 0;
    for (std::size_t i = f.c.size(); i-- > 0;)
      acc = F.add(F.mul(acc, a), f.c[i]);
    out.add(acc);
  }
  return out;
}

}  // namespace

TEST_CASE("frozen small-field sumsets") {
  Field F5 = f5_oracle();
  ElemSet A01 = ElemSet::of(5, {0, 1});
  CHECK(signed_sumset(F5, A01, 1, 1) == ElemSet::of(5, {0, 1, 4}));

  Field F7 = f7_oracle();
  ElemSet B01 = ElemSet::of(7, {0, 1});
  ElemSet s = signed_sumset(F7, B01, 2, 2);
  CHECK(s == ElemSet::of(7, {5, 6, 0, 1, 2}));
  CHECK(s.card() == 5);
}

TEST_CASE("subfields absorb their own sumsets") {
  Field F(2, 2, 3);
  ElemSet G = F.subfield(3);
  CHECK(signed_sumset(F, G, 4, 0) == G);
  CHECK(signed_sumset(F, G, 4, 4) == G);
}

TEST_CASE("frozen ratio sets") {
  Field F5 = f5_oracle();
  RatioSet r = ratio_set(F5, ElemSet::of(5, {1, 2}), ElemSet::of(5, {1, 2}));
  CHECK(r.set == ElemSet::of(5, {1, 2, 3}));
  CHECK_FALSE(r.zero_denominator_skipped);

  ElemSet A = ElemSet::of(5, {1, 2});
  RatioSet ident = ratio_set(F5, A, ElemSet::of(5, {1}));
  CHECK(ident.set == A);

  Field F4(2, 1, 2);
  ElemSet star = ElemSet::of(4, {1, 2, 3});
  CHECK(ratio_set(F4, star, star).set == star);

  RatioSet skip = ratio_set(F5, A, ElemSet::of(5, {0, 1}));
  CHECK(skip.zero_denominator_skipped);
  CHECK(skip.set == A);
  CHECK_THROWS_AS(ratio_set(F5, A, ElemSet::of(5, {0})), DomainError);
}

TEST_CASE("dilates") {
  Field F(2, 2, 3);
  ElemSet G = F.subfield(2);
  CHECK(dilate(F, 1, G) == G);
  CHECK(dilate(F, 0, G) == ElemSet::of(F.order(), {0}));
  SplitMix64 rng(5);
  for (int i = 0; i < 20; ++i) {
    Elem a = static_cast<Elem>(1 + rng.below(F.order() - 1));
    CHECK(dilate(F, a, G).card() == G.card());
  }
}

TEST_CASE("restricted pair relations") {
  Field F7 = f7_oracle();
  ElemSet U = ElemSet::of(7, {1, 2, 3});
  ElemSet V = ElemSet::of(7, {1, 2});
  std::vector<std::pair<Elem, Elem>> full;
  for (Elem a : U.to_vector())
    for (Elem b : V.to_vector()) full.emplace_back(a, b);
  PairRelation E = make_pair_relation(F7, U, V, full);
  CHECK(restricted_pairs(F7, E, PairOp::Ratio) == oracle_ratio(F7, U, V));

  PairRelation empty = make_pair_relation(F7, U, V, {});
  CHECK(restricted_pairs(F7, empty, PairOp::Diff).card() == 0);

  PairRelation zero_den = make_pair_relation(
      F7, U, ElemSet::of(7, {0, 1}), {{1, 0}});
  CHECK_THROWS_AS(restricted_pairs(F7, zero_den, PairOp::Ratio), DomainError);
}

TEST_CASE("pair relation for the quadratic factorization") {
  Field F(3, 1, 4);  // odd characteristic
  SplitMix64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    ElemSet A = random_set(F, rng, 4 + rng.below(20));
    Elem b = static_cast<Elem>(rng.below(F.order()));
    PairRelation E = bsg_pair_relation(F, A, b);
    std::uint64_t M = A.card();
    CHECK(E.pairs.size() + M >= M * M);
    for (const auto& [x, y] : E.pairs) {
      CHECK(E.U.test(x));
      CHECK(E.V.test(y));
    }
    // the restricted ratio set lands inside f(A) - f(A) for f = X^2 + bX
    Poly f({0, b, 1});
    ElemSet fA = image_set(F, f, A);
    ElemSet fdiff = diffset(F, fA, fA);
    ElemSet ratios = restricted_pairs(F, E, PairOp::Ratio);
    CHECK(ratios.subset_of(fdiff));
  }
  Field F4(2, 1, 2);
  CHECK_THROWS_AS(bsg_pair_relation(F4, ElemSet::of(4, {0, 1}), 1),
                  DomainError);
}

TEST_CASE("popular differences") {
  Field F7 = f7_oracle();
  auto ap = popular_difference(F7, ElemSet::of(7, {0, 2, 4, 6}));
  CHECK(ap.t == 2);
  CHECK(ap.count == 3);

  auto tie = popular_difference(F7, ElemSet::of(7, {0, 1, 3}));
  CHECK(tie.count == 1);
  CHECK(tie.t == 1);  // least index among tied nonzero differences

  CHECK_THROWS_AS(popular_difference(F7, ElemSet::of(7, {3})), DomainError);
}

TEST_CASE("set statistics") {
  Field F7 = f7_oracle();
  ElemSet A = ElemSet::of(7, {0, 1});
  SetStats st = set_stats(F7, A, Poly({0, 0, 1}));
  CHECK(st.alpha == BigRat(3, 2));
  CHECK(st.beta == BigRat(3, 2));
  CHECK(st.xi == BigRat(3, 2));
  CHECK(st.gamma >= st.alpha);
  CHECK(st.gamma >= st.beta);

  // subfield closure: every statistic collapses to 1 (xi at most 1)
  Field F(2, 2, 3);
  ElemSet G = F.subfield(2);
  SetStats gs = set_stats(F, G, Poly({0, 1, 1}));  // X^2 + X over F_2
  CHECK(gs.alpha == 1);
  CHECK(gs.beta == 1);
  CHECK(gs.gamma == 1);
  CHECK(gs.xi <= 1);
}

TEST_CASE("alpha, beta <= gamma on random sets") {
  Field F(3, 1, 3);
  SplitMix64 rng(13);
  for (int i = 0; i < 60; ++i) {
    ElemSet A = random_set(F, rng, 2 + rng.below(12));
    Poly f({static_cast<Elem>(rng.below(F.order())),
            static_cast<Elem>(rng.below(F.order())), 1});
    SetStats st = set_stats(F, A, f);
    CHECK(st.alpha <= st.gamma);
    CHECK(st.beta <= st.gamma);
  }
}

TEST_CASE("sumset monotonicity with 0 in A") {
  Field F(2, 1, 4);
  SplitMix64 rng(15);
  for (int i = 0; i < 40; ++i) {
    ElemSet A = random_set(F, rng, 1 + rng.below(8));
    A.add(0);
    ElemSet base = signed_sumset(F, A, 1, 1);
    ElemSet bigger = signed_sumset(F, A, 3, 1);
    CHECK(base.subset_of(bigger));
  }
}

TEST_CASE("plunnecke frozen example and subfield case") {
  Field F7 = f7_oracle();
  PRReport r = plunnecke_check(F7, ElemSet::of(7, {0, 1}));
  CHECK(r.lhs == 5);
  CHECK(r.rhs == BigRat(81, 8));
  CHECK(r.holds);

  Field F(2, 1, 6);
  ElemSet G = F.subfield(2);
  PRReport rg = plunnecke_check(F, G);
  CHECK(rg.lhs == G.card());
  CHECK(rg.rhs == BigRat(static_cast<unsigned long>(G.card())));
  CHECK(rg.holds);
}

TEST_CASE("operations agree with the naive oracles") {
  for (auto [p, m, r] : {std::tuple{2u, 1u, 4u}, {3u, 1u, 3u}}) {
    Field F(p, m, r);
    SplitMix64 rng(100 + p);
    for (int i = 0; i < 120; ++i) {
      std::uint64_t size = 1 + rng.below(std::min<std::uint64_t>(
                                   F.order(), 64));
      ElemSet A = random_set(F, rng, size);
      ElemSet B = random_set(F, rng, 1 + rng.below(8));
      CHECK(sumset(F, A, B) == oracle_sumset(F, A, B));
      std::uint32_t kp = static_cast<std::uint32_t>(rng.below(3));
      std::uint32_t km = static_cast<std::uint32_t>(rng.below(3));
      if (kp + km == 0) kp = 1;
      CHECK(signed_sumset(F, A, kp, km) == oracle_signed(F, A, kp, km));
      if (B.card() > (B.test(0) ? 1u : 0u))
        CHECK(ratio_set(F, A, B).set == oracle_ratio(F, A, B));
      Poly f({static_cast<Elem>(rng.below(F.order())),
              static_cast<Elem>(rng.below(F.order())),
              static_cast<Elem>(1 + rng.below(F.order() - 1))});
      CHECK(image_set(F, f, A) == oracle_image(F, f, A));
    }
  }
}

TEST_CASE("work caps trip") {
  Field F(2, 1, 10);
  SplitMix64 rng(21);
  ElemSet A = random_set(F, rng, 64);
  CHECK_THROWS_AS(sumset(F, A, A, 100), CapError);
  CHECK_THROWS_AS(signed_sumset(F, A, 4, 4, 100), CapError);
}

TEST_CASE("set serialization round-trips") {
  Field F(2, 2, 3);
  SplitMix64 rng(23);
  for (int i = 0; i < 30; ++i) {
    ElemSet s = random_set(F, rng, 1 + rng.below(F.order() - 1));
    CHECK(set_from_json(F, set_to_json(F, s)) == s);
    CHECK(set_from_hex(F.order(), set_to_hex(s)) == s);
  }
  Field F81(3, 1, 4);
  ElemSet odd = random_set(F81, rng, 17);
  CHECK(set_from_hex(F81.order(), set_to_hex(odd)) == odd);
  CHECK_THROWS_AS(set_from_hex(16, "zz"), ParseError);
}
