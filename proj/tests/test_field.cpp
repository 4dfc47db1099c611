#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffdyn/field.hpp"
#include "ffdyn/rng.hpp"

using namespace ffdyn;

namespace {
Field f4() { return Field(2, 1, 2); }
Field f64_tower() { return Field(2, 2, 3); }
}  // namespace

TEST_CASE("F_4 construction is the canonical one") {
  Field F = f4();
  CHECK(F.order() == 4);
  CHECK(F.q() == 2);
  // g = x, h = y^2 + y + 1 (the only irreducible quadratic over F_2)
  CHECK(F.inner_modulus() == std::vector<std::uint32_t>{0, 1});
  CHECK(F.outer_modulus() == std::vector<Elem>{1, 1, 1});
  CHECK(F.spec() == "2^1^2");

  Elem w = F.tower_gen();
  CHECK(w == 2);
  CHECK(F.to_literal(w) == "10");
  // w^2 = w + 1
  CHECK(F.mul(w, w) == 3);
  CHECK(F.frobenius(w, 1) == 3);
  CHECK_FALSE(F.in_subfield(w, 1));
}

TEST_CASE("F_9 uses h = y^2 + 1 and has multiplicative order 8") {
  Field F(3, 1, 2);
  CHECK(F.order() == 9);
  CHECK(F.outer_modulus() == std::vector<Elem>{1, 0, 1});
  for (Elem a = 1; a < 9; ++a) {
    CHECK(F.pow(a, 8) == 1);
  }
}

TEST_CASE("identity and inverse laws on every element of small fields") {
  for (auto [p, m, r] : {std::tuple{2u, 1u, 2u}, {3u, 1u, 2u}, {2u, 2u, 3u}}) {
    Field F(p, m, r);
    for (Elem a = 0; a < F.order(); ++a) {
      CHECK(F.add(a, 0) == a);
      CHECK(F.mul(a, 1) == a);
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
    }
  }
}

TEST_CASE("field axioms hold on random triples") {
  for (auto [p, m, r] : {std::tuple{2u, 1u, 4u},
                         {3u, 1u, 3u},
                         {2u, 2u, 3u},
                         {5u, 1u, 2u},
                         {3u, 2u, 2u},
                         {5u, 2u, 2u}}) {
    Field F(p, m, r);
    SplitMix64 rng(42);
    for (int i = 0; i < 10000; ++i) {
      Elem a = static_cast<Elem>(rng.below(F.order()));
      Elem b = static_cast<Elem>(rng.below(F.order()));
      Elem c = static_cast<Elem>(rng.below(F.order()));
      CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, b) == F.mul(b, a));
    }
  }
}

TEST_CASE("frobenius is a field automorphism of order dividing m*r") {
  Field F = f64_tower();
  SplitMix64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    Elem a = static_cast<Elem>(rng.below(F.order()));
    Elem b = static_cast<Elem>(rng.below(F.order()));
    std::uint32_t e = static_cast<std::uint32_t>(rng.below(7));
    CHECK(F.frobenius(F.mul(a, b), e) ==
          F.mul(F.frobenius(a, e), F.frobenius(b, e)));
    CHECK(F.frobenius(F.add(a, b), e) ==
          F.add(F.frobenius(a, e), F.frobenius(b, e)));
    CHECK(F.frobenius(a, 0) == a);
    CHECK(F.frobenius(a, F.m() * F.r()) == a);
  }
}

TEST_CASE("subfield lattice of F_64 over the 2^2^3 tower") {
  Field F = f64_tower();
  CHECK(F.subfield_degrees() == std::vector<std::uint32_t>{1, 2, 3, 6});

  // #F_{p^d} = p^d, and containment follows divisibility.
  for (std::uint32_t d : F.subfield_degrees()) {
    ElemSet s = F.subfield(d);
    std::uint64_t expect = 1;
    for (std::uint32_t i = 0; i < d; ++i) expect *= F.p();
    CHECK(s.card() == expect);
  }
  for (std::uint32_t a : F.subfield_degrees())
    for (std::uint32_t b : F.subfield_degrees()) {
      bool contained = F.subfield(a).subset_of(F.subfield(b));
      CHECK(contained == (b % a == 0));
    }

  // subfield(d) agrees with the Frobenius fixed-point definition
  for (std::uint32_t d : F.subfield_degrees()) {
    ElemSet s = F.subfield(d);
    for (Elem a = 0; a < F.order(); ++a)
      CHECK(s.test(a) == (F.frobenius(a, d) == a));
  }

  // the subfield of degree m is K: exactly the indices below q
  ElemSet K = F.subfield(F.m());
  CHECK(K.card() == F.q());
  for (Elem a = 0; a < F.order(); ++a) CHECK(K.test(a) == (a < F.q()));

  // F_8 is closed under addition and multiplication
  ElemSet f8 = F.subfield(3);
  f8.for_each([&](Elem a) {
    f8.for_each([&](Elem b) {
      CHECK(f8.test(F.add(a, b)));
      CHECK(f8.test(F.mul(a, b)));
    });
  });

  // a generator of F_64^* has order 63, which does not divide 7
  CHECK_FALSE(F.in_subfield(F.multiplicative_generator(), 3));
  CHECK(F.in_subfield(0, 1));
  CHECK(F.in_subfield(0, 3));
}

TEST_CASE("odd-characteristic tower: subfields and inverses") {
  Field F(3, 2, 2);  // F_81 over K = F_9
  CHECK(F.q() == 9);
  CHECK(F.subfield_degrees() == std::vector<std::uint32_t>{1, 2, 4});
  ElemSet K = F.subfield(2);
  CHECK(K.card() == 9);
  for (Elem a = 0; a < F.order(); ++a) CHECK(K.test(a) == (a < 9));
  for (Elem a = 1; a < F.order(); ++a) {
    CHECK(F.mul(a, F.inv(a)) == 1);
    CHECK(F.pow(a, F.order() - 1) == 1);
  }
}

TEST_CASE("literal codec round-trips and rejects malformed input") {
  Field F = f64_tower();
  for (Elem a = 0; a < F.order(); ++a)
    CHECK(F.from_literal(F.to_literal(a)) == a);

  Field F4 = f4();
  CHECK(F4.from_literal("10") == 2);
  CHECK(F4.from_literal("00") == 0);
  CHECK(F4.to_literal(0) == "00");
  CHECK(F4.from_literal("3") == 3);  // decimal index form
  CHECK_THROWS_AS(F4.from_literal("20"), ParseError);   // digit >= p
  CHECK_THROWS_AS(F4.from_literal("9"), ParseError);    // index out of range
  CHECK_THROWS_AS(F4.from_literal(""), ParseError);
  CHECK_THROWS_AS(F4.from_literal("1x"), ParseError);
}

TEST_CASE("coords are base-q digits and from_coords inverts them") {
  Field F = f64_tower();
  for (Elem a = 0; a < F.order(); ++a) {
    auto c = F.coords(a);
    REQUIRE(c.size() == F.r());
    CHECK(F.from_coords(c) == a);
  }
  auto cy = F.coords(F.tower_gen());
  CHECK(cy == std::vector<Elem>{0, 1, 0});
}

TEST_CASE("division and pow behave") {
  Field F(3, 1, 2);
  for (Elem a = 0; a < F.order(); ++a) {
    CHECK_THROWS_AS(F.div(a, 0), DomainError);
    for (Elem b = 1; b < F.order(); ++b)
      CHECK(F.mul(F.div(a, b), b) == a);
  }
  CHECK(F.pow(0, 0) == 1);
  CHECK(F.pow(0, 5) == 0);
}

TEST_CASE("prime-field oracle mode sits behind the flag") {
  CHECK_THROWS_AS(Field(5, 1, 1), DomainError);
  FieldOptions opts;
  opts.allow_r1 = true;
  Field F5(5, 1, 1, opts);
  CHECK(F5.order() == 5);
  CHECK(F5.add(2, 3) == 0);
  CHECK(F5.mul(2, 3) == 1);
  CHECK(F5.inv(2) == 3);
}

TEST_CASE("bad parameters are rejected") {
  CHECK_THROWS_AS(Field(4, 1, 2), DomainError);  // p not prime
  CHECK_THROWS_AS(Field(2, 1, 30), DomainError);  // over the cap
  FieldOptions tight;
  tight.max_order = 16;
  CHECK_THROWS_AS(Field(2, 1, 5, tight), DomainError);
}

TEST_CASE("splitmix64 matches the published reference vector") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
}
