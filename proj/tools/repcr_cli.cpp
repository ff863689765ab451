// Command-line front end: character printing, CR decisions with
// certificates, and the reproduction suites.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "repcr/character.hpp"
#include "repcr/crtools.hpp"
#include "repcr/jantzen.hpp"
#include "repcr/rootdatum.hpp"
#include "repcr/suites.hpp"
#include "repcr/weakmax.hpp"
#include "repcr/weights.hpp"

namespace {

using nlohmann::json;
using namespace repcr;

struct CharArgs {
  std::string type_pos, type_flag, weight;
  int p = 0;
  bool simple = false, weyl = false, factors = false, as_json = false;
};

struct CrArgs {
  std::string type_pos, type_flag, lambda, mu;
  int p = 0;
  bool as_json = false, oracle = false;
  int dim_cap = 0;
};

struct ReproduceArgs {
  std::string suite;
  int jobs = 1;
  int dim_cap = 0;
  bool dry_run = false, as_json = false;
};

std::string pick_type(const std::string& pos, const std::string& flag) {
  if (!pos.empty()) return pos;
  if (!flag.empty()) return flag;
  throw CLI::ValidationError("type", "missing group type (positional or --type)");
}

json character_json(const Character& ch) {
  json arr = json::array();
  for (const auto& [w, m] : ch) arr.push_back({weight_to_string(w), m});
  return arr;
}

void print_character(const Character& ch) {
  std::printf("dim %lld\n", mass(ch));
  for (const auto& [w, m] : ch)
    std::printf("%s: %lld\n", weight_to_string(w).c_str(), m);
}

int cmd_char(const CharArgs& a) {
  RootDatum rd = parse_root_datum(pick_type(a.type_pos, a.type_flag));
  const Weight lambda = parse_weight(a.weight, rd.rank);
  if (!rd.is_dominant(lambda))
    throw CLI::ValidationError("weight", "weight must be dominant");
  if ((a.simple || a.factors) && a.p < 2)
    throw CLI::ValidationError("p", "--simple/--factors need a prime --p");

  if (a.factors) {
    auto wcf = weyl_comp_factors(rd, lambda, a.p);
    if (a.as_json) {
      json out;
      out["weight"] = weight_to_string(lambda);
      out["p"] = a.p;
      json arr = json::array();
      for (const auto& [w, m] : wcf.factors)
        arr.push_back({weight_to_string(w), m});
      out["factors"] = arr;
      out["determined"] = wcf.determined;
      std::printf("%s\n", out.dump().c_str());
    } else {
      std::printf("determined %s\n", wcf.determined ? "true" : "false");
      for (const auto& [w, m] : wcf.factors)
        std::printf("L(%s): %lld\n", weight_to_string(w).c_str(), m);
      for (const auto& w : wcf.undetermined)
        std::printf("L(%s): ?\n", weight_to_string(w).c_str());
    }
    return 0;
  }

  const bool simple_mode = a.simple && !a.weyl;
  std::optional<Character> ch;
  if (simple_mode)
    ch = simple_character(rd, lambda, a.p);
  else
    ch = weyl_character(rd, lambda);
  if (a.as_json) {
    json out;
    out["weight"] = weight_to_string(lambda);
    out["mode"] = simple_mode ? "simple" : "weyl";
    if (simple_mode) out["p"] = a.p;
    out["determined"] = ch.has_value();
    if (ch) {
      out["dim"] = mass(*ch);
      out["character"] = character_json(*ch);
    }
    std::printf("%s\n", out.dump().c_str());
    return 0;
  }
  if (!ch) {
    std::printf("undetermined\n");
    return 0;
  }
  print_character(*ch);
  return 0;
}

/// L(lambda) for arbitrary dominant lambda, assembled from twisted
/// restricted digits.  Throws std::invalid_argument past the dimension cap.
ExplicitModule assembled_simple_module(const RootDatum& rd,
                                       const Weight& lambda, int p) {
  auto digits = p_digits(lambda, p).digits;
  ExplicitModule out = *simple_module(rd, digits.empty() ? zero_weight(rd.rank)
                                                         : digits[0],
                                      p);
  for (size_t i = 1; i < digits.size(); ++i) {
    ExplicitModule twisted = *simple_module(rd, digits[i], p);
    for (size_t k = 0; k < i; ++k) twisted = frobenius_twist_module(twisted);
    out = tensor_modules(out, twisted);
    if (out.dim > weakmax_dim_cap())
      throw std::invalid_argument("assembled_simple_module: dimension cap");
  }
  return out;
}

int cmd_cr(const CrArgs& a) {
  RootDatum rd = parse_root_datum(pick_type(a.type_pos, a.type_flag));
  if (a.p < 2) throw CLI::ValidationError("p", "cr needs a prime --p");
  if (a.dim_cap > 0) weakmax_dim_cap() = a.dim_cap;
  const Weight lambda = parse_weight(a.lambda, rd.rank);
  const Weight mu = parse_weight(a.mu, rd.rank);
  if (!rd.is_dominant(lambda) || !rd.is_dominant(mu))
    throw CLI::ValidationError("lambda/mu", "weights must be dominant");

  DecideOptions opts;
  opts.use_oracle = a.oracle;
  auto dec = decide_cr(rd, lambda, mu, a.p, opts);

  std::string oracle_verdict;
  if (a.oracle) {
    try {
      auto A = assembled_simple_module(rd, lambda, a.p);
      auto B = assembled_simple_module(rd, mu, a.p);
      if (static_cast<long long>(A.dim) * B.dim > weakmax_dim_cap())
        throw std::invalid_argument("cap");
      oracle_verdict = is_cr_g(tensor_modules(A, B)) ? "CR" : "NotCR";
    } catch (const std::invalid_argument&) {
      oracle_verdict = "Unknown";
    }
  }

  if (a.as_json) {
    json out;
    out["verdict"] = verdict_name(dec.overall.verdict);
    out["certificate"] = {{"rule", dec.overall.rule},
                          {"witness", dec.overall.witness}};
    json digits = json::array();
    for (const auto& tr : dec.digits)
      digits.push_back({{"lambda0", weight_to_string(tr.lambda0)},
                        {"mu0", weight_to_string(tr.mu0)},
                        {"verdict", verdict_name(tr.verdict.verdict)},
                        {"rule", tr.verdict.rule}});
    out["digits"] = digits;
    json summands = json::array();
    for (const auto& [w, m] : dec.overall.summands)
      summands.push_back({weight_to_string(w), m});
    out["summands"] = summands;
    if (a.oracle) out["oracle"] = oracle_verdict;
    std::printf("%s\n", out.dump().c_str());
    return 0;
  }
  std::printf("%s\n", verdict_name(dec.overall.verdict));
  std::printf("rule: %s\n", dec.overall.rule.c_str());
  if (!dec.overall.witness.empty())
    std::printf("witness: %s\n", dec.overall.witness.c_str());
  for (const auto& tr : dec.digits)
    std::printf("digit (%s | %s): %s [%s]\n",
                weight_to_string(tr.lambda0).c_str(),
                weight_to_string(tr.mu0).c_str(),
                verdict_name(tr.verdict.verdict), tr.verdict.rule.c_str());
  for (const auto& [w, m] : dec.overall.summands)
    std::printf("summand L(%s) x %lld\n", weight_to_string(w).c_str(), m);
  if (a.oracle) std::printf("oracle: %s\n", oracle_verdict.c_str());
  return 0;
}

int cmd_reproduce(const ReproduceArgs& a) {
  bool known = false;
  for (const auto& s : suites::suite_names()) known |= (s == a.suite);
  if (!known)
    throw CLI::ValidationError("suite", "unknown suite '" + a.suite + "'");
  if (a.dim_cap > 0) weakmax_dim_cap() = a.dim_cap;

  if (a.dry_run) {
    for (const auto& c : suites::checks_for(a.suite))
      std::printf("%s: %s\n", c.id.c_str(), c.expected.c_str());
    return 0;
  }
  auto report = suites::run_suite(a.suite, a.jobs);
  if (a.as_json) {
    json out;
    out["suite"] = report.suite;
    out["wall_seconds"] = report.wall_seconds;
    json checks = json::array();
    for (const auto& c : report.checks)
      checks.push_back({{"id", c.id},
                        {"expected", c.expected},
                        {"actual", c.actual},
                        {"pass", c.pass}});
    out["checks"] = checks;
    json rules = json::object();
    for (const auto& [r, n] : report.rule_counts) rules[r] = n;
    out["rules_fired"] = rules;
    out["pass"] = report.passed();
    std::printf("%s\n", out.dump().c_str());
  } else {
    for (const auto& c : report.checks)
      std::printf("[%s] %s: %s\n", c.pass ? "PASS" : "FAIL", c.id.c_str(),
                  c.actual.c_str());
    std::printf("suite %s: %s (%.1fs, %zu checks)\n", report.suite.c_str(),
                report.passed() ? "PASS" : "FAIL", report.wall_seconds,
                report.checks.size());
  }
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic complete-reducibility toolkit"};
  app.require_subcommand(1);

  CharArgs ca;
  auto* sc_char = app.add_subcommand("char", "Print a character");
  sc_char->add_option("TYPE", ca.type_pos, "Group type, e.g. G2 or A3");
  sc_char->add_option("--type", ca.type_flag, "Group type");
  sc_char->add_option("--p", ca.p, "Characteristic");
  sc_char->add_option("--weight", ca.weight, "Highest weight")->required();
  sc_char->add_flag("--simple", ca.simple, "Simple character ch L(weight)");
  sc_char->add_flag("--weyl", ca.weyl, "Weyl character chi(weight)");
  sc_char->add_flag("--factors", ca.factors,
                    "Composition factors of the Weyl module");
  sc_char->add_flag("--json", ca.as_json, "JSON output");

  CrArgs ra;
  auto* sc_cr = app.add_subcommand("cr", "Decide complete reducibility");
  sc_cr->add_option("TYPE", ra.type_pos, "Group type");
  sc_cr->add_option("--type", ra.type_flag, "Group type");
  sc_cr->add_option("--p", ra.p, "Characteristic");
  sc_cr->add_option("--lambda", ra.lambda, "First highest weight")->required();
  sc_cr->add_option("--mu", ra.mu, "Second highest weight")->required();
  sc_cr->add_flag("--json", ra.as_json, "JSON output");
  sc_cr->add_flag("--oracle", ra.oracle,
                  "Also run the explicit-module check when within the cap");
  sc_cr->add_option("--dim-cap", ra.dim_cap, "Explicit-module dimension cap");

  ReproduceArgs pa;
  auto* sc_rep = app.add_subcommand("reproduce", "Run a reproduction suite");
  sc_rep->add_option("suite", pa.suite, "Suite id or 'all'")->required();
  sc_rep->add_option("--jobs", pa.jobs, "Concurrent checks");
  sc_rep->add_option("--dim-cap", pa.dim_cap, "Explicit-module dimension cap");
  sc_rep->add_flag("--dry-run", pa.dry_run, "List checks without running");
  sc_rep->add_flag("--json", pa.as_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    if (sc_char->parsed()) return cmd_char(ca);
    if (sc_cr->parsed()) return cmd_cr(ra);
    return cmd_reproduce(pa);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
