#pragma once

// Command runners behind the CLI: each maps a RunConfig onto one library
// operation and renders a CSV body plus a JSON summary.  Runners are pure
// functions of the config, so identical configs produce byte-identical
// reports; all sampling flows through per-instance child seeds drawn from
// the master seed, and every row carries enough literals and seeds to be
// re-verified in isolation.

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "ffdyn/elem_set.hpp"
#include "ffdyn/errors.hpp"
#include "ffdyn/experiments.hpp"
#include "ffdyn/exponents.hpp"
#include "ffdyn/field.hpp"
#include "ffdyn/linalg.hpp"
#include "ffdyn/poly.hpp"
#include "ffdyn/report.hpp"
#include "ffdyn/rng.hpp"
#include "ffdyn/setcalc.hpp"
#include "ffdyn/subfield_orbit.hpp"

namespace ffdyn {

struct RunConfig {
  std::string command;
  std::string field_spec;
  std::string poly_literal;
  std::string u_literal;
  std::uint64_t N = 100;
  std::uint32_t dsub = 0;  // 0: defaults to m (the tower's K)
  std::uint32_t dim = 2;
  std::uint64_t seed = 1;
  std::uint64_t samples = 100;
  std::uint64_t set_size = 16;
  std::uint64_t cap = kDefaultWorkCap;
  std::string out;
  std::string format = "csv";
  bool exhaustive = false;
  bool monic = false;
  bool allow_r1 = false;
  double c2 = 1.0;
  std::string log_base = "e";
  std::uint32_t dmax = 10;
  std::uint32_t degree = 2;
  std::uint64_t max_field = std::uint64_t{1} << 24;
};

struct RunOutput {
  std::string summary;  // short human-readable lines
  std::string csv;      // report body
  std::string json;     // aggregate summary, sorted keys
};

inline void parse_field_spec(const std::string& spec, std::uint32_t& p,
                             std::uint32_t& m, std::uint32_t& r) {
  std::vector<std::uint64_t> parts;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t caret = spec.find('^', pos);
    std::string part = spec.substr(
        pos, caret == std::string::npos ? std::string::npos : caret - pos);
    if (part.empty()) throw ParseError("malformed field spec");
    std::uint64_t v = 0;
    for (char c : part) {
      if (c < '0' || c > '9') throw ParseError("malformed field spec");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
      if (v > (std::uint64_t{1} << 32)) throw ParseError("field spec too large");
    }
    parts.push_back(v);
    if (caret == std::string::npos) break;
    pos = caret + 1;
  }
  if (parts.size() != 3) throw ParseError("field spec must be p^m^r");
  p = static_cast<std::uint32_t>(parts[0]);
  m = static_cast<std::uint32_t>(parts[1]);
  r = static_cast<std::uint32_t>(parts[2]);
}

inline Field build_field(const RunConfig& cfg) {
  require(!cfg.field_spec.empty(), "--field is required");
  std::uint32_t p, m, r;
  parse_field_spec(cfg.field_spec, p, m, r);
  FieldOptions opts;
  opts.max_order = cfg.max_field;
  opts.allow_r1 = cfg.allow_r1;
  return Field(p, m, r, opts);
}

/// Comma-separated coefficient literals, low degree first.
inline Poly parse_poly(const Field& F, const std::string& literal) {
  require(!literal.empty(), "--poly is required");
  std::vector<Elem> coeffs;
  std::size_t pos = 0;
  while (pos <= literal.size()) {
    std::size_t comma = literal.find(',', pos);
    std::string part = literal.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    coeffs.push_back(F.from_literal(part));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return Poly(std::move(coeffs));
}

inline std::string poly_to_cell(const Field& F, const std::vector<Elem>& c) {
  std::vector<std::string> parts;
  parts.reserve(c.size());
  for (Elem e : c) parts.push_back(F.to_literal(e));
  return dot_join(parts);
}

inline ElemSet sample_set(const Field& F, std::uint64_t size,
                          SplitMix64& rng) {
  require(size >= 1 && size <= F.order(), "set size out of range");
  ElemSet s(F.order());
  while (s.card() < size) s.add(static_cast<Elem>(rng.below(F.order())));
  return s;
}

inline std::uint32_t default_dsub(const Field& F, const RunConfig& cfg) {
  std::uint32_t d = cfg.dsub ? cfg.dsub : F.m();
  require(d >= 1 && (F.m() * F.r()) % d == 0, "--dsub must divide m*r");
  return d;
}

namespace cli_detail {

inline std::vector<std::string> condition_cells(const Field& F,
                                                const ConditionReport& c) {
  return {fmt_bool(c.satisfied),        std::to_string(c.worst_d),
          F.to_literal(c.worst_a),      std::to_string(c.worst_count),
          fmt_double(c.threshold_at_worst), fmt_bool(c.exact)};
}

inline const std::vector<std::string>& condition_header() {
  static const std::vector<std::string> h = {
      "cond_satisfied", "cond_worst_d",  "cond_worst_a",
      "cond_worst_count", "cond_threshold", "cond_exact"};
  return h;
}

inline Json condition_json(const Field& F, const ConditionReport& c) {
  Json j;
  j["satisfied"] = c.satisfied;
  j["worst_d"] = c.worst_d;
  j["worst_a"] = F.to_literal(c.worst_a);
  j["worst_count"] = c.worst_count;
  j["threshold"] = c.threshold_at_worst;
  j["exact"] = c.exact;
  j["mode"] = c.mode;
  j["exponent"] = rat_str(c.exponent);
  return j;
}

template <typename... Extra>
inline std::vector<std::string> concat(std::vector<std::string> head,
                                       const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace cli_detail

// ---- runners ----------------------------------------------------------------

inline RunOutput run_field_info(const RunConfig& cfg) {
  Field F = build_field(cfg);
  Csv csv({"field", "p", "m", "r", "q", "order", "g", "h", "subfield_degrees"});
  std::vector<std::string> gparts, hparts, dparts;
  for (auto c : F.inner_modulus()) gparts.push_back(std::to_string(c));
  for (auto c : F.outer_modulus()) hparts.push_back(std::to_string(c));
  for (auto d : F.subfield_degrees()) dparts.push_back(std::to_string(d));
  csv.add_row({F.spec(), std::to_string(F.p()), std::to_string(F.m()),
               std::to_string(F.r()), std::to_string(F.q()),
               std::to_string(F.order()), dot_join(gparts), dot_join(hparts),
               dot_join(dparts)});
  Json j;
  j["field"] = F.spec();
  j["order"] = F.order();
  j["q"] = F.q();
  j["g"] = gparts;
  j["h"] = hparts;
  j["subfield_degrees"] = F.subfield_degrees();
  RunOutput out;
  out.summary = "field " + F.spec() + ": order " + std::to_string(F.order()) +
                ", K size " + std::to_string(F.q()) + "\n";
  out.csv = csv.str();
  out.json = j.dump(2) + "\n";
  return out;
}

inline RunOutput run_orbit(const RunConfig& cfg) {
  Field F = build_field(cfg);
  Poly f = parse_poly(F, cfg.poly_literal);
  Elem u = F.from_literal(cfg.u_literal);
  OrbitSummary orb = orbit(F, f, u);
  Csv csv({"field", "poly", "u", "tail", "cycle", "orbit_size", "elements"});
  csv.add_row({F.spec(), poly_to_cell(F, f.c), F.to_literal(u),
               std::to_string(orb.tail_len), std::to_string(orb.cycle_len),
               std::to_string(orb.size()), poly_to_cell(F, orb.elements)});
  Json j;
  j["field"] = F.spec();
  j["tail"] = orb.tail_len;
  j["cycle"] = orb.cycle_len;
  j["orbit_size"] = orb.size();
  RunOutput out;
  out.summary = "tail=" + std::to_string(orb.tail_len) +
                " cycle=" + std::to_string(orb.cycle_len) +
                " orbit=" + std::to_string(orb.size()) + "\n";
  out.csv = csv.str();
  out.json = j.dump(2) + "\n";
  return out;
}

inline RunOutput run_detect(const RunConfig& cfg) {
  Field F = build_field(cfg);
  Poly f = parse_poly(F, cfg.poly_literal);
  Elem u = F.from_literal(cfg.u_literal);
  std::uint32_t d_sub = default_dsub(F, cfg);
  DetectionResult res = detect_subfield_iterate(F, f, u, d_sub, cfg.N);
  Csv csv({"field", "poly", "u", "dsub", "N", "hits", "threshold",
           "threshold_met", "found_k", "method", "within_orbit",
           "orbit_size"});
  std::string method = res.method == CertMethod::Symbolic     ? "symbolic"
                       : res.method == CertMethod::Evaluation ? "evaluation"
                                                              : "none";
  csv.add_row({F.spec(), poly_to_cell(F, f.c), F.to_literal(u),
               std::to_string(d_sub), std::to_string(cfg.N),
               std::to_string(res.hits_count), fmt_double(res.threshold),
               fmt_bool(res.threshold_met),
               res.found_k ? std::to_string(*res.found_k) : "none", method,
               fmt_bool(res.within_orbit), std::to_string(res.orbit_size)});
  Json j;
  j["hits"] = res.hits_count;
  j["threshold"] = res.threshold;
  j["threshold_met"] = res.threshold_met;
  j["found_k"] = res.found_k ? Json(*res.found_k) : Json(nullptr);
  j["method"] = method;
  j["within_orbit"] = res.within_orbit;
  j["orbit_size"] = res.orbit_size;
  Json gaps = Json::object();
  for (const auto& [h, a] : res.histogram.counts)
    gaps[std::to_string(h)] = a;
  j["gap_counts"] = gaps;
  RunOutput out;
  out.summary =
      (res.found_k ? "found_k=" + std::to_string(*res.found_k) + " (" + method + ")"
                   : std::string("found_k=none")) +
      " hits=" + std::to_string(res.hits_count) +
      " threshold=" + fmt_double(res.threshold) + "\n";
  out.csv = csv.str();
  out.json = j.dump(2) + "\n";
  return out;
}

inline RunOutput run_verify_subfield(const RunConfig& cfg) {
  Field F = build_field(cfg);
  std::uint32_t d_sub = default_dsub(F, cfg);
  VerifyOptions vopts;
  vopts.monic = cfg.monic;
  VerifyReport rep =
      cfg.exhaustive
          ? verify_subfield(F, cfg.degree, d_sub, vopts)
          : verify_subfield_sampled(F, cfg.degree, d_sub, cfg.samples,
                                    cfg.seed, vopts);
  Csv csv({"field", "poly", "u", "N", "hits", "threshold"});
  for (const auto& v : rep.violations)
    csv.add_row({F.spec(), poly_to_cell(F, v.coeffs), F.to_literal(v.u),
                 std::to_string(v.N), std::to_string(v.hits),
                 fmt_double(v.threshold)});
  Json j;
  j["field"] = F.spec();
  j["degree"] = rep.degree;
  j["d_sub"] = rep.d_sub;
  j["monic"] = rep.monic;
  j["exhaustive"] = cfg.exhaustive;
  j["polys"] = rep.polys;
  j["skipped_constant"] = rep.skipped_constant;
  j["pairs"] = rep.pairs;
  j["instances"] = rep.instances;
  j["vacuous"] = rep.vacuous;
  j["met"] = rep.met;
  j["certified"] = rep.certified;
  j["detector_calls"] = rep.detector_calls;
  j["counterexamples"] = rep.violation_count;
  RunOutput out;
  out.summary = "counterexamples: " + std::to_string(rep.violation_count) +
                "\n" + "pairs: " + std::to_string(rep.pairs) +
                ", instances: " + std::to_string(rep.instances) +
                ", vacuous: " + std::to_string(rep.vacuous) +
                ", met: " + std::to_string(rep.met) + "\n";
  out.csv = csv.str();
  out.json = j.dump(2) + "\n";
  return out;
}

inline RunOutput run_exponents(const RunConfig& cfg) {
  ExponentTable tab(cfg.dmax, cfg.c2);
  LogBase base = cfg.log_base == "2" ? LogBase::Two : LogBase::Natural;
  Csv csv({"d", "eta", "theta", "kappa", "rho", "log_c",
           "c_of_d_threshold_coefficient", "log_c_over_log_d"});
  for (const auto& row : tab.rows()) {
    csv.add_row({std::to_string(row.d), rat_str(row.eta), rat_str(row.theta),
                 rat_str(row.kappa), rat_str(row.rho), fmt_double(row.log_c),
                 fmt_double(freq_coefficient(row.d, base)),
                 fmt_double(row.log_c / std::log(static_cast<double>(row.d)))});
  }
  Json j;
  j["dmax"] = cfg.dmax;
  j["c2"] = cfg.c2;
  j["log_base"] = cfg.log_base;
  j["eta_2"] = rat_str(tab.at(2).eta);
  if (cfg.dmax >= 3) j["eta_3"] = rat_str(tab.at(3).eta);
  RunOutput out;
  out.summary = "eta_2 = " + rat_str(tab.at(2).eta) + "\n";
  out.csv = csv.str();
  out.json = j.dump(2) + "\n";
  return out;
}

inline RunOutput run_expansion(const RunConfig& cfg) {
  Field F = build_field(cfg);
  Poly f = parse_poly(F, cfg.poly_literal);
  ExponentTable tab(std::max<std::uint32_t>(
      2, static_cast<std::uint32_t>(std::max(f.degree(), 2))), cfg.c2);
  SplitMix64 master(cfg.seed);
  Csv csv(cli_detail::concat({"field", "poly", "seed", "set_size", "M",
                              "alpha", "beta", "gamma", "xi", "eight_card",
                              "fdiff_card", "measured_exponent"},
                             cli_detail::condition_header()));
  std::uint64_t above_one = 0;
  double sum_exp = 0.0;
  for (std::uint64_t i = 0; i < cfg.samples; ++i) {
    std::uint64_t child = master.next();
    SplitMix64 rng(child);
    ElemSet A = sample_set(F, cfg.set_size, rng);
    ExpansionReport rep = expansion_experiment(F, A, f, tab, cfg.cap);
    if (!rep.degenerate) {
      sum_exp += rep.measured_exponent;
      if (rep.measured_exponent > 1.0) ++above_one;
    }
    csv.add_row(cli_detail::concat(
        {F.spec(), poly_to_cell(F, f.c), std::to_string(child),
         std::to_string(cfg.set_size), std::to_string(rep.M),
         rat_str(rep.stats.alpha), rat_str(rep.stats.beta),
         rat_str(rep.stats.gamma), rat_str(rep.stats.xi),
         std::to_string(rep.eight_card), std::to_string(rep.fdiff_card),
         fmt_double(rep.measured_exponent)},
        cli_detail::condition_cells(F, rep.condition)));
  }
  Json j;
  j["samples"] = cfg.samples;
  j["set_size"] = cfg.set_size;
  j["mean_exponent"] = cfg.samples ? sum_exp / cfg.samples : 0.0;
  j["fraction_above_one"] =
      cfg.samples ? static_cast<double>(above_one) / cfg.samples : 0.0;
  RunOutput out;
  out.summary = "samples: " + std::to_string(cfg.samples) +
                ", exponent > 1 on " + std::to_string(above_one) + "\n";
  out.csv = csv.str();
  out.json = j.dump(2) + "\n";
  return out;
}

inline RunOutput run_polydim(const RunConfig& cfg) {
  Field F = build_field(cfg);
  Poly f = parse_poly(F, cfg.poly_literal);
  ExponentTable tab(std::max<std::uint32_t>(
      2, static_cast<std::uint32_t>(std::max(f.degree(), 2))), cfg.c2);
  SplitMix64 master(cfg.seed);
  Csv csv(cli_detail::concat(
      {"field", "poly", "seed", "base", "basis", "s", "dim_image", "ratio",
       "degenerate"},
      cli_detail::condition_header()));
  for (std::uint64_t i = 0; i < cfg.samples; ++i) {
    std::uint64_t child = master.next();
    AffineSubspace A = random_affine(F, cfg.dim, child);
    PolyDimReport rep = polydim_experiment(F, A, f, tab, cfg.cap);
    ConditionReport cond =
        rep.condition ? *rep.condition : ConditionReport{};
    csv.add_row(cli_detail::concat(
        {F.spec(), poly_to_cell(F, f.c), std::to_string(child),
         F.to_literal(A.base), poly_to_cell(F, A.basis),
         std::to_string(rep.s), std::to_string(rep.dim_image),
         fmt_double(rep.ratio), fmt_bool(rep.degenerate)},
        cli_detail::condition_cells(F, cond)));
  }
  Json j;
  j["samples"] = cfg.samples;
  j["dim"] = cfg.dim;
  RunOutput out;
  out.summary = "samples: " + std::to_string(cfg.samples) + "\n";
  out.csv = csv.str();
  out.json = j.dump(2) + "\n";
  return out;
}

inline RunOutput run_intersect(const RunConfig& cfg) {
  Field F = build_field(cfg);
  Poly f = parse_poly(F, cfg.poly_literal);
  ExponentTable tab(std::max<std::uint32_t>(
      2, static_cast<std::uint32_t>(std::max(f.degree(), 2))), cfg.c2);
  SplitMix64 master(cfg.seed);
  Csv csv(cli_detail::concat(
      {"field", "poly", "seed", "base", "basis", "s", "card_intersection",
       "bound_exponent", "measured_exponent", "preimage_card",
       "in_theorem_range"},
      cli_detail::condition_header()));
  for (std::uint64_t i = 0; i < cfg.samples; ++i) {
    std::uint64_t child = master.next();
    AffineSubspace A = random_affine(F, cfg.dim, child);
    IntersectionReport rep = intersection_experiment(F, A, f, tab, cfg.cap);
    csv.add_row(cli_detail::concat(
        {F.spec(), poly_to_cell(F, f.c), std::to_string(child),
         F.to_literal(A.base), poly_to_cell(F, A.basis),
         std::to_string(rep.s), std::to_string(rep.card_intersection),
         fmt_double(rep.bound_exponent), fmt_double(rep.measured_exponent),
         std::to_string(rep.preimage_card), fmt_bool(rep.in_theorem_range)},
        cli_detail::condition_cells(F, rep.condition)));
  }
  Json j;
  j["samples"] = cfg.samples;
  j["dim"] = cfg.dim;
  RunOutput out;
  out.summary = "samples: " + std::to_string(cfg.samples) +
                " (all proof inclusions held)\n";
  out.csv = csv.str();
  out.json = j.dump(2) + "\n";
  return out;
}

inline RunOutput run_orbit_run(const RunConfig& cfg) {
  Field F = build_field(cfg);
  Poly f = parse_poly(F, cfg.poly_literal);
  SplitMix64 master(cfg.seed);
  Csv csv({"field", "poly", "seed", "u", "base", "basis", "s",
           "run_from_start", "longest_anywhere", "orbit_size",
           "subspace_card", "exponent"});
  for (std::uint64_t i = 0; i < cfg.samples; ++i) {
    std::uint64_t child = master.next();
    SplitMix64 rng(child);
    AffineSubspace A = random_affine(F, cfg.dim, child);
    Elem u = cfg.u_literal.empty()
                 ? static_cast<Elem>(rng.below(F.order()))
                 : F.from_literal(cfg.u_literal);
    OrbitRunReport rep = orbit_run_experiment(F, f, u, A, cfg.cap);
    csv.add_row({F.spec(), poly_to_cell(F, f.c), std::to_string(child),
                 F.to_literal(u), F.to_literal(A.base),
                 poly_to_cell(F, A.basis), std::to_string(cfg.dim),
                 std::to_string(rep.run_from_start),
                 std::to_string(rep.longest_anywhere),
                 std::to_string(rep.orbit_size),
                 std::to_string(rep.subspace_card), fmt_double(rep.exponent)});
  }
  Json j;
  j["samples"] = cfg.samples;
  RunOutput out;
  out.summary = "samples: " + std::to_string(cfg.samples) + "\n";
  out.csv = csv.str();
  out.json = j.dump(2) + "\n";
  return out;
}

inline RunOutput run_sp_measure(const RunConfig& cfg) {
  Field F = build_field(cfg);
  SplitMix64 master(cfg.seed);
  Csv csv(cli_detail::concat(
      {"field", "seed", "M", "ratio_card", "sum4_card", "lhs1", "lhs2", "rhs",
       "zero_denominator_skipped"},
      cli_detail::condition_header()));
  for (std::uint64_t i = 0; i < cfg.samples; ++i) {
    std::uint64_t child = master.next();
    SplitMix64 rng(child);
    ElemSet A = sample_set(F, cfg.set_size, rng);
    SpGenReport rep = sp_gen_measure(F, A, cfg.cap);
    csv.add_row(cli_detail::concat(
        {F.spec(), std::to_string(child), std::to_string(rep.M),
         std::to_string(rep.ratio_card), std::to_string(rep.sum4_card),
         rep.lhs1.get_str(), rep.lhs2.get_str(), rep.rhs.get_str(),
         fmt_bool(rep.zero_denominator_skipped)},
        cli_detail::condition_cells(F, rep.condition)));
  }
  Json j;
  j["samples"] = cfg.samples;
  j["set_size"] = cfg.set_size;
  RunOutput out;
  out.summary = "samples: " + std::to_string(cfg.samples) + "\n";
  out.csv = csv.str();
  out.json = j.dump(2) + "\n";
  return out;
}

inline RunOutput run_plunnecke(const RunConfig& cfg) {
  Field F = build_field(cfg);
  SplitMix64 master(cfg.seed);
  Csv csv({"field", "seed", "M", "lhs", "rhs", "holds"});
  std::uint64_t held = 0;
  for (std::uint64_t i = 0; i < cfg.samples; ++i) {
    std::uint64_t child = master.next();
    SplitMix64 rng(child);
    ElemSet U = sample_set(F, cfg.set_size, rng);
    PRReport rep = plunnecke_check(F, U, cfg.cap);
    if (rep.holds) ++held;
    csv.add_row({F.spec(), std::to_string(child), std::to_string(U.card()),
                 std::to_string(rep.lhs), rat_str(rep.rhs),
                 fmt_bool(rep.holds)});
  }
  Json j;
  j["samples"] = cfg.samples;
  j["held"] = held;
  RunOutput out;
  out.summary = "held on " + std::to_string(held) + " of " +
                std::to_string(cfg.samples) + " samples\n";
  out.csv = csv.str();
  out.json = j.dump(2) + "\n";
  return out;
}

inline RunOutput run_command(const RunConfig& cfg) {
  if (cfg.command == "field-info") return run_field_info(cfg);
  if (cfg.command == "orbit") return run_orbit(cfg);
  if (cfg.command == "detect") return run_detect(cfg);
  if (cfg.command == "verify-subfield") return run_verify_subfield(cfg);
  if (cfg.command == "exponents") return run_exponents(cfg);
  if (cfg.command == "expansion") return run_expansion(cfg);
  if (cfg.command == "polydim") return run_polydim(cfg);
  if (cfg.command == "intersect") return run_intersect(cfg);
  if (cfg.command == "orbit-run") return run_orbit_run(cfg);
  if (cfg.command == "sp-measure") return run_sp_measure(cfg);
  if (cfg.command == "plunnecke") return run_plunnecke(cfg);
  throw ParseError("unknown command: " + cfg.command);
}

}  // namespace ffdyn
