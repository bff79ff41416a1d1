// Batch front end: closedness checks, generator dumps, rewriting traces and
// oracle/subduction verification.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rees/complex.hpp"
#include "rees/dfi.hpp"
#include "rees/io.hpp"
#include "rees/oracle.hpp"
#include "rees/presentations.hpp"
#include "rees/sagbi.hpp"
#include "rees/sorting.hpp"

using nlohmann::json;
using namespace rees;

namespace {

enum Exit { kOk = 0, kNo = 1, kBudget = 2, kNotClosed = 3, kParse = 4, kInternal = 5 };

struct Config {
  std::string input;
  std::string format = "text";
  std::optional<long> budget_degree;
  std::optional<std::size_t> budget_steps;
  bool strict = false;
  std::uint64_t seed = 0;
  std::string field = "rational";
  std::string certificate;
  // subcommand arguments
  std::string target = "rees-initial";
  std::string monomial;
  std::string strategy = "proof";
  std::string which;
  std::string generators;
  bool diagnostic = false;
  int complete_rounds = 0;
};

bool as_json(const Config& c) { return c.format == "json"; }

OracleOptions oracle_options(const Config& c, std::vector<std::string>* warnings) {
  OracleOptions o;
  o.degree_budget = c.budget_degree;
  o.strict = c.strict;
  o.field = c.field == "fp32003" ? FieldKind::Fp32003 : FieldKind::Rational;
  o.warnings = warnings;
  return o;
}

void emit(const Config& c, const json& j, const std::string& text) {
  if (as_json(c)) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

void write_certificate(const Config& c, const json& j) {
  if (c.certificate.empty()) return;
  std::ofstream out(c.certificate);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + c.certificate);
  out << j.dump(2) << "\n";
}

SimplicialComplex load(const Config& c, std::vector<std::string>& warnings) {
  if (c.input.empty()) throw Error(ErrorCode::ParseError, "--input is required");
  SimplicialComplex d = load_complex(c.input, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  warnings.clear();
  return d;
}

int cmd_check_closed(const Config& c) {
  std::vector<std::string> warnings;
  SimplicialComplex d = load(c, warnings);
  CliqueIndex ctx(d);
  ClosednessConditions cond = closedness_conditions(d);
  const auto& res = ctx.closedness();
  json cliques = json::array();
  for (const auto& cl : ctx.decomposition().cliques) cliques.push_back(cl);
  json j{{"closed", res.closed},
         {"conditions", {{"a", cond.a}, {"b", cond.b}, {"c", cond.c}}},
         {"cliques", cliques},
         {"facets", d.facets().size()}};
  std::ostringstream t;
  t << (res.closed ? "closed" : "not closed") << "\n";
  if (res.witness) {
    const auto& w = *res.witness;
    j["witness"] = {{"F", w.F.to_vector()}, {"G", w.G.to_vector()}, {"coordinate", w.coordinate}};
    t << "witness: {" << w.F.to_string() << "} and {" << w.G.to_string() << "} lie in no common clique and agree in coordinate "
      << w.coordinate << "\n";
  }
  t << "condition  holds\n";
  t << "(a)        " << (cond.a ? "yes" : "no") << "\n";
  t << "(b)        " << (cond.b ? "yes" : "no") << "\n";
  t << "(c)        " << (cond.c ? "yes" : "no") << "\n";
  t << "cliques:";
  for (const auto& cl : ctx.decomposition().cliques) {
    t << " {";
    for (int v : cl) t << v << (v == cl.back() ? "" : ",");
    t << "}";
  }
  t << "\n";
  emit(c, j, t.str());
  return res.closed ? kOk : kNo;
}

GeneratorSet make_generators(Target target, const SimplicialComplex& d, const OracleOptions& oo) {
  if (target == Target::SymmetricLifted) return gens_symmetric(d, oo);
  CliqueIndex ctx(d);
  switch (target) {
    case Target::ReesInitial: return gens_rees_initial(ctx);
    case Target::FiberInitial: return gens_fiber_initial(ctx);
    case Target::ReesLifted: return gens_rees_lifted(ctx);
    case Target::FiberLifted: return gens_fiber_lifted(ctx);
    case Target::SymmetricLifted: break;
  }
  throw Error(ErrorCode::Internal, "unreachable target");
}

int cmd_gens(const Config& c) {
  std::vector<std::string> warnings;
  SimplicialComplex d = load(c, warnings);
  Target target = parse_target(c.target);
  GeneratorSet gs = make_generators(target, d, oracle_options(c, &warnings));
  std::ostringstream t;
  t << "target " << to_string(gs.target) << ": " << gs.items.size() << " generators (Koszul "
    << gs.count(Family::Koszul) << ", LinearSyzygy " << gs.count(Family::LinearSyzygy) << ", Plucker "
    << gs.count(Family::Plucker) << ")\n";
  for (const auto& it : gs.items) {
    t << "  [" << to_string(it.family) << "] " << poly_text(it.poly);
    if (it.marked) t << "    marked: " << it.marked->to_string();
    t << "\n";
  }
  emit(c, to_json(gs, d.m()), t.str());
  return kOk;
}

int cmd_normal_form(const Config& c) {
  std::vector<std::string> warnings;
  SimplicialComplex d = load(c, warnings);
  Monomial mono = parse_monomial(c.monomial);
  CliqueIndex ctx(d);
  GeneratorSet gs = gens_rees_initial(ctx);
  Rewriter rw(gs.marked(), &ctx);
  RewriteOptions ro;
  ro.record_trace = true;
  ro.seed = c.seed;
  ro.step_budget = c.budget_steps;
  if (c.strategy == "proof") ro.strategy = Strategy::ProofOrder;
  else if (c.strategy == "canonical") ro.strategy = Strategy::Canonical;
  else if (c.strategy == "random") ro.strategy = Strategy::Random;
  else throw Error(ErrorCode::ParseError, "unknown strategy \"" + c.strategy + "\"");

  NormalFormResult nf = rw.normal_form(mono, ro);
  CliqueSortedResult cs = is_clique_sorted(nf.result, ctx);
  SortingDistance sd = sorting_distance(nf.result, ctx);
  json steps = json::array();
  std::ostringstream t;
  t << "input:  " << mono.to_string() << "   measure " << rewrite_measure(mono, ctx).to_string() << "\n";
  for (std::size_t k = 0; k < nf.steps.size(); ++k) {
    const auto& s = nf.steps[k];
    steps.push_back({{"family", to_string(s.family)},
                     {"consumed", s.consumed.to_string()},
                     {"produced", s.produced.to_string()},
                     {"measure_before", s.before.to_string()},
                     {"measure_after", s.after.to_string()}});
    t << "step " << k + 1 << " [" << to_string(s.family) << "] " << s.consumed.to_string() << " -> "
      << s.produced.to_string() << "   measure " << s.after.to_string() << "\n";
  }
  t << "result: " << (nf.coefficient == 1 ? "" : to_string(nf.coefficient) + " ") << nf.result.to_string() << "\n";
  t << "steps " << nf.num_steps << ", sorting distance " << sd.to_string() << ", "
    << (cs.sorted ? "clique-sorted" : "not clique-sorted") << "\n";
  json j{{"input", mono.to_string()},
         {"result", nf.result.to_string()},
         {"coefficient", to_string(nf.coefficient)},
         {"num_steps", nf.num_steps},
         {"sorting_distance", sd.to_string()},
         {"clique_sorted", cs.sorted},
         {"steps", steps}};
  emit(c, j, t.str());
  return cs.sorted ? kOk : kNo;
}

// Equality of a generator set with the kernel of its presentation map.
json check_family(const GeneratorSet& gs, const SimplicialComplex& d, const OracleOptions& oo, bool& ok,
                  std::ostringstream& t) {
  PresentationMap map = kernel_map(gs.target);
  IdealBasis k = kernel_of_map(map, d, oo);
  MonomialOrder order = kernel_order(map, d.m());
  EqualityReport rep = ideal_equal(gs.polynomials(), k.generators, order, oo);
  bool good = rep.equal && !rep.truncated && !k.truncated;
  ok = ok && good;
  t << to_string(gs.target) << ": " << gs.items.size() << " generators vs kernel of " << to_string(map) << " ("
    << k.generators.size() << " basis elements): " << (good ? "equal" : "NOT equal") << "\n";
  if (rep.witness) t << "  witness: " << poly_text(*rep.witness, order) << "\n";
  json j = to_json(rep, order);
  j["target"] = to_string(gs.target);
  j["kernel_truncated"] = k.truncated;
  return j;
}

int cmd_verify(const Config& c) {
  std::vector<std::string> warnings;
  SimplicialComplex d = load(c, warnings);
  OracleOptions oo = oracle_options(c, &warnings);
  std::ostringstream t;
  json j{{"check", c.which}};
  bool ok = true;

  if (c.which == "gb-rees" || c.which == "gb-fiber") {
    json results = json::array();
    if (!c.generators.empty()) {
      std::ifstream in(c.generators);
      if (!in) throw Error(ErrorCode::ParseError, "cannot open " + c.generators);
      json g;
      try {
        g = json::parse(in);
      } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
      }
      results.push_back(check_family(generator_set_from_json(g), d, oo, ok, t));
    } else {
      CliqueIndex ctx(d);
      if (c.which == "gb-rees") {
        results.push_back(check_family(gens_rees_initial(ctx), d, oo, ok, t));
        results.push_back(check_family(gens_rees_lifted(ctx), d, oo, ok, t));
      } else {
        results.push_back(check_family(gens_fiber_initial(ctx), d, oo, ok, t));
        results.push_back(check_family(gens_fiber_lifted(ctx), d, oo, ok, t));
      }
    }
    j["results"] = results;
  } else if (c.which == "sagbi") {
    if (c.diagnostic) {
      auto diag = sagbi_diagnostic(d);
      json items = json::array();
      for (const auto& it : diag) {
        items.push_back({{"relation", poly_text(it.relation)},
                         {"steps", it.trace.steps.size()},
                         {"remainder", poly_text(it.trace.remainder)}});
        t << "relation " << poly_text(it.relation) << "\n  remainder " << poly_text(it.trace.remainder) << "\n";
      }
      ok = diag.empty();
      t << (ok ? "all relations subduct to zero\n" : std::to_string(diag.size()) + " relations with nonzero remainder\n");
      j["diagnostic"] = items;
      if (c.complete_rounds > 0) {
        CompletionOptions co;
        co.max_rounds = c.complete_rounds;
        if (c.budget_degree) co.degree_budget = *c.budget_degree;
        CompletionReport cr = sagbi_complete(rees_algebra_gens(d), co);
        json added = json::array();
        for (const auto& a : cr.added) added.push_back(poly_text(a));
        j["completion"] = {{"rounds", cr.rounds}, {"complete", cr.complete}, {"added", added}};
        t << "completion: " << cr.added.size() << " generators added in " << cr.rounds << " rounds"
          << (cr.complete ? ", complete within budget" : "") << "\n";
      }
    } else {
      SagbiReport rees = verify_sagbi(d);
      SagbiReport fiber = verify_fiber_sagbi(d);
      ok = rees.verified && fiber.verified;
      j["rees"] = to_json(rees);
      j["fiber"] = to_json(fiber);
      auto summary = [&t](const char* name, const SagbiReport& r) {
        std::size_t bad = 0;
        for (const auto& it : r.items) bad += !it.ok();
        t << name << ": " << r.items.size() << " relations, " << bad << " failing -> "
          << (r.verified ? "SAGBI basis" : "not certified") << "\n";
      };
      summary("rees", rees);
      summary("fiber", fiber);
    }
  } else if (c.which == "type") {
    Classification cl = classify_type(d, oo);
    j["classification"] = to_json(cl);
    t << "type: " << to_string(cl.type) << (cl.truncated ? " (truncated)" : "") << "\n";
    for (const auto& cert : cl.certificates) t << "  certificate: " << poly_text(cert.poly, cl.rees.order) << "\n";
    ok = !cl.truncated;
    write_certificate(c, j["classification"]);
  } else {
    throw Error(ErrorCode::ParseError, "unknown check \"" + c.which + "\"");
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  j["verified"] = ok;
  if (c.which != "type") write_certificate(c, j);
  emit(c, j, t.str());
  return ok ? kOk : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rees algebras of determinantal facet ideals: closedness, generators, rewriting, verification"};
  app.footer(
      "Complex files are JSON: {\"m\": 2, \"n\": 6, \"facets\": [[1,2], ...]} or {\"m\": 2, \"cliques\": [[1,2,3,4,5], ...]}.\n"
      "Monomials: whitespace-separated factors x11, x{r,c}, T145, T{1,4,5}, T_{145}, t, with optional ^k.\n"
      "Exit codes: 0 ok/verified/closed, 1 not verified/not closed, 2 budget exceeded, 3 not closed (required), 4 parse error.");
  app.require_subcommand(1);
  Config c;
  app.add_option("--input", c.input, "Complex JSON file");
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--budget-degree", c.budget_degree, "Groebner degree budget (sugar degree)");
  app.add_option("--budget-steps", c.budget_steps, "Rewriting step budget");
  app.add_flag("--strict", c.strict, "Treat a reached degree budget as an error");
  app.add_option("--seed", c.seed, "Seed for randomized strategies");
  app.add_option("--field", c.field, "Coefficient field for the Groebner pre-pass")
      ->check(CLI::IsMember({"rational", "fp32003"}));
  app.add_option("--certificate", c.certificate, "Write the certificate JSON to this file");

  auto* closed = app.add_subcommand("check-closed", "Closedness verdict, witness and condition table");
  auto* gens = app.add_subcommand("gens", "Emit a generator family");
  gens->add_option("--target", c.target, "rees-initial, fiber-initial, rees, fiber or symmetric")
      ->check(CLI::IsMember({"rees-initial", "fiber-initial", "rees", "fiber", "symmetric", "rees-lifted", "fiber-lifted"}));
  auto* nf = app.add_subcommand("normal-form", "Rewrite a monomial to its clique-sorted normal form");
  nf->add_option("monomial", c.monomial, "Monomial text")->required();
  nf->add_option("--strategy", c.strategy, "proof, canonical or random")
      ->check(CLI::IsMember({"proof", "canonical", "random"}));
  auto* verify = app.add_subcommand("verify", "Oracle or subduction verification");
  verify->add_option("which", c.which, "gb-rees, gb-fiber, sagbi or type")
      ->required()
      ->check(CLI::IsMember({"gb-rees", "gb-fiber", "sagbi", "type"}));
  verify->add_option("--generators", c.generators, "Check a generator file written by 'gens --format json'");
  verify->add_flag("--diagnostic", c.diagnostic, "sagbi: subduct the oracle's relations, for any complex");
  verify->add_option("--complete-rounds", c.complete_rounds, "sagbi --diagnostic: bounded completion rounds");

  // Flags are accepted both before and after the subcommand.
  for (auto* sub : {closed, gens, nf, verify}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*closed) return cmd_check_closed(c);
    if (*gens) return cmd_gens(c);
    if (*nf) return cmd_normal_form(c);
    if (*verify) return cmd_verify(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::BudgetExceeded:
      case ErrorCode::OracleBudgetExceeded:
      case ErrorCode::NonTermination: return kBudget;
      case ErrorCode::NotClosed: return kNotClosed;
      case ErrorCode::ParseError:
      case ErrorCode::BadIndex:
      case ErrorCode::DuplicateVertex:
      case ErrorCode::UnboundVariable: return kParse;
      default: return kInternal;
    }
  }
  return kInternal;
}
