#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffdyn/cli.hpp"

using namespace ffdyn;

TEST_CASE("field spec parsing") {
  std::uint32_t p, m, r;
  parse_field_spec("2^2^3", p, m, r);
  CHECK(p == 2);
  CHECK(m == 2);
  CHECK(r == 3);
  CHECK_THROWS_AS(parse_field_spec("2^3", p, m, r), ParseError);
  CHECK_THROWS_AS(parse_field_spec("", p, m, r), ParseError);
  CHECK_THROWS_AS(parse_field_spec("2^a^3", p, m, r), ParseError);

  RunConfig cfg;
  cfg.field_spec = "2^1^2";
  Field F = build_field(cfg);
  CHECK(F.spec() == cfg.field_spec);  // round-trip
}

TEST_CASE("polynomial literals") {
  RunConfig cfg;
  cfg.field_spec = "2^1^2";
  Field F = build_field(cfg);
  Elem w = F.tower_gen();
  // "01,00,10" is w X^2 + 1
  Poly f = parse_poly(F, "01,00,10");
  CHECK(f == Poly({1, 0, w}));
  CHECK(poly_to_cell(F, f.c) == "01.00.10");
  CHECK_THROWS_AS(parse_poly(F, ""), DomainError);
  CHECK_THROWS_AS(parse_poly(F, "01,,10"), ParseError);
}

TEST_CASE("orbit command reproduces the F_4 example") {
  RunConfig cfg;
  cfg.command = "orbit";
  cfg.field_spec = "2^1^2";
  cfg.poly_literal = "10,00,01";  // X^2 + w
  cfg.u_literal = "00";
  RunOutput out = run_command(cfg);
  CHECK(out.summary == "tail=0 cycle=4 orbit=4\n");
  CHECK(out.csv.find("2^1^2,10.00.01,00,0,4,4,") != std::string::npos);
}

TEST_CASE("exponents command emits the pinned first row") {
  RunConfig cfg;
  cfg.command = "exponents";
  cfg.dmax = 10;
  RunOutput out = run_command(cfg);
  CHECK(out.summary == "eta_2 = 1/69\n");
  CHECK(out.csv.find("\n2,1/69,1/69,1/70,137/4761,") != std::string::npos);
  CHECK(out.csv.find("\n3,1/346,3/173,") != std::string::npos);

  RunConfig base2 = cfg;
  base2.log_base = "2";
  RunOutput out2 = run_command(base2);
  CHECK(out2.csv != out.csv);  // the c(d) column moves with the base
}

TEST_CASE("detect command summarizes the w X^2 control") {
  RunConfig cfg;
  cfg.command = "detect";
  cfg.field_spec = "2^1^2";
  cfg.poly_literal = "00,00,10";  // w X^2
  cfg.u_literal = "01";
  cfg.N = 100;
  RunOutput out = run_command(cfg);
  CHECK(out.summary.find("found_k=2 (symbolic)") == 0);
  CHECK(out.csv.find(",50,") != std::string::npos);
}

TEST_CASE("verify command on a small exhaustive space") {
  RunConfig cfg;
  cfg.command = "verify-subfield";
  cfg.field_spec = "2^1^3";
  cfg.degree = 2;
  cfg.exhaustive = true;
  RunOutput out = run_command(cfg);
  CHECK(out.summary.find("counterexamples: 0\n") == 0);
  Json j = Json::parse(out.json);
  CHECK(j["pairs"].get<std::uint64_t>() == 512 * 8 - 8 * 8);
  CHECK(j["counterexamples"].get<std::uint64_t>() == 0);
}

TEST_CASE("sampling commands are deterministic in the config") {
  for (const char* command : {"expansion", "polydim", "intersect",
                              "orbit-run", "sp-measure", "plunnecke"}) {
    RunConfig cfg;
    cfg.command = command;
    cfg.field_spec = "3^1^3";
    cfg.poly_literal = "001,000,001";  // X^2 + 1
    cfg.samples = 5;
    cfg.set_size = 6;
    cfg.dim = 1;
    cfg.seed = 77;
    RunOutput a = run_command(cfg);
    RunOutput b = run_command(cfg);
    CHECK(a.csv == b.csv);
    CHECK(a.json == b.json);
    RunConfig other = cfg;
    other.seed = 78;
    RunOutput c = run_command(other);
    CHECK(a.csv != c.csv);  // seeds move the sampled columns
  }
}

TEST_CASE("every emitted CSV parses as rectangular comma-separated text") {
  RunConfig cfg;
  cfg.command = "expansion";
  cfg.field_spec = "3^1^3";
  cfg.poly_literal = "001,000,001";
  cfg.samples = 3;
  cfg.set_size = 5;
  RunOutput out = run_command(cfg);
  std::size_t cols = 0, line_start = 0;
  for (std::size_t i = 0; i <= out.csv.size(); ++i) {
    if (i == out.csv.size() || out.csv[i] == '\n') {
      if (i > line_start) {
        std::size_t commas = 0;
        for (std::size_t k = line_start; k < i; ++k)
          if (out.csv[k] == ',') ++commas;
        if (cols == 0)
          cols = commas + 1;
        else
          CHECK(commas + 1 == cols);
      }
      line_start = i + 1;
    }
  }
  CHECK(cols >= 12);
}

TEST_CASE("unknown commands and bad configs raise parse errors") {
  RunConfig cfg;
  cfg.command = "nonsense";
  CHECK_THROWS_AS(run_command(cfg), ParseError);

  RunConfig missing;
  missing.command = "orbit";
  CHECK_THROWS_AS(run_command(missing), DomainError);  // no field spec

  RunConfig badsub;
  badsub.command = "detect";
  badsub.field_spec = "2^1^2";
  badsub.poly_literal = "00,00,10";
  badsub.u_literal = "01";
  badsub.dsub = 3;
  CHECK_THROWS_AS(run_command(badsub), DomainError);
}

TEST_CASE("subspace serialization round-trips") {
  RunConfig cfg;
  cfg.field_spec = "2^2^3";
  Field F = build_field(cfg);
  SplitMix64 rng(9);
  for (int i = 0; i < 20; ++i) {
    AffineSubspace A = random_affine(
        F, static_cast<std::uint32_t>(rng.below(F.r() + 1)), rng.next());
    AffineSubspace B = subspace_from_json(F, subspace_to_json(F, A));
    CHECK(A.base == B.base);
    CHECK(A.basis == B.basis);
  }
}

TEST_CASE("json summaries have sorted keys and parse back") {
  RunConfig cfg;
  cfg.command = "field-info";
  cfg.field_spec = "2^2^3";
  RunOutput out = run_command(cfg);
  Json j = Json::parse(out.json);
  CHECK(j["order"].get<std::uint64_t>() == 64);
  CHECK(j["q"].get<std::uint64_t>() == 4);
  CHECK(out.json.find("\"field\"") < out.json.find("\"order\""));
}
