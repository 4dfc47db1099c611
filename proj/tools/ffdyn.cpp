// ffdyn command-line driver.
//
// Exit codes: 0 success, 2 parse/usage error, 3 work cap exceeded,
// 4 internal invariant violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ffdyn/ffdyn.hpp"

namespace {

void write_report(const ffdyn::RunConfig& cfg, const ffdyn::RunOutput& out) {
  std::cout << out.summary;
  const std::string& body = cfg.format == "json" ? out.json : out.csv;
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ffdyn::ParseError("cannot open output file: " + cfg.out);
    f << body;
  } else {
    std::cout << body;
  }
}

}  // namespace

int main(int argc, char** argv) {
  ffdyn::RunConfig cfg;
  if (const char* env = std::getenv("FFDYN_MAX_FIELD"))
    cfg.max_field = std::strtoull(env, nullptr, 10);

  CLI::App app{"polynomial dynamics and set calculus over finite-field towers"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--field", cfg.field_spec, "field spec p^m^r");
    sub->add_option("--poly", cfg.poly_literal,
                    "coefficient literals, low degree first, comma separated");
    sub->add_option("--u", cfg.u_literal, "starting point literal");
    sub->add_option("--N", cfg.N, "window length");
    sub->add_option("--dsub", cfg.dsub, "subfield degree (default: m)");
    sub->add_option("--dim", cfg.dim, "subspace dimension");
    sub->add_option("--seed", cfg.seed, "master seed");
    sub->add_option("--samples", cfg.samples, "number of sampled instances");
    sub->add_option("--set-size", cfg.set_size, "sampled set cardinality");
    sub->add_option("--cap", cfg.cap, "work cap for set operations");
    sub->add_option("--out", cfg.out, "report file path");
    sub->add_option("--format", cfg.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--exhaustive", cfg.exhaustive, "scan the whole space");
    sub->add_flag("--monic", cfg.monic, "restrict scans to monic tuples");
    sub->add_flag("--allow-r1", cfg.allow_r1, "permit r = 1 oracle fields");
    sub->add_option("--c2", cfg.c2, "base constant c_2");
    sub->add_option("--log-base", cfg.log_base, "e|2, for the c(d) column")
        ->check(CLI::IsMember({"e", "2"}));
    sub->add_option("--dmax", cfg.dmax, "largest degree in the table");
    sub->add_option("--degree", cfg.degree, "scanned polynomial degree");
  };

  for (const char* name :
       {"field-info", "orbit", "detect", "verify-subfield", "exponents",
        "expansion", "polydim", "intersect", "orbit-run", "sp-measure",
        "plunnecke"}) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub);
    sub->callback([&cfg, name]() { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    ffdyn::RunOutput out = ffdyn::run_command(cfg);
    write_report(cfg, out);
    return 0;
  } catch (const ffdyn::CapError& e) {
    std::cerr << "work cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const ffdyn::InvariantError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return 4;
  } catch (const ffdyn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
