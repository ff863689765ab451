#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>

#include "repcr/suites.hpp"

using namespace repcr;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const char* bin = std::getenv("REPCR_CLI");
  REQUIRE(bin != nullptr);  // set by the test harness configuration
  std::string cmd = std::string(bin) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof(buf), pipe)) res.output.append(buf, n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace

TEST_CASE("rule families") {
  CHECK(suites::rule_family("an_p2_classifier:case1") == "an_p2_classifier");
  CHECK(suites::rule_family("levi[2,3,4]:smallprime_classifier") == "levi");
  CHECK(suites::rule_family("g2_inequality_short") == "g2_inequality");
  CHECK(suites::rule_family("bn_p2:omega_n-1") == "bn_p2");
  CHECK(suites::rule_family("serre:frobenius_factor") == "serre");
  CHECK(suites::rule_family("trivial") == "trivial");
  CHECK(suites::rule_family("digit_conjunction") == "digit_conjunction");
}

TEST_CASE("check registry covers every suite and criterion") {
  std::set<std::string> ids;
  std::set<int> criteria;
  for (const auto& c : suites::checks_for("all")) {
    CHECK(ids.insert(c.id).second);
    if (c.criterion > 0) criteria.insert(c.criterion);
  }
  CHECK_FALSE(ids.empty());
  for (int i = 1; i <= 12; ++i) CHECK(criteria.count(i) == 1);

  for (const auto& name : suites::suite_names())
    CHECK_FALSE(suites::checks_for(name).empty());
  CHECK(suites::checks_for("nope").empty());
}

TEST_CASE("cheap suites pass") {
  for (const char* name : {"g2p2", "c3p2"}) {
    auto report = suites::run_suite(name, 1);
    CAPTURE(name);
    for (const auto& c : report.checks) {
      CAPTURE(c.id, c.actual);
      CHECK(c.pass);
    }
    CHECK(report.passed());
  }
}

TEST_CASE("cli char subcommand") {
  auto r = run_cli("char G2 --p 3 --weight 1,0 --simple");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("dim 7") != std::string::npos);

  auto w = run_cli("char A3 --weight 0,1,0 --weyl");
  CHECK(w.exit_code == 0);
  CHECK(w.output.find("dim 6") != std::string::npos);

  auto t = run_cli("char A1 --weight 0 --weyl");
  CHECK(t.exit_code == 0);
  CHECK(t.output.find("dim 1") != std::string::npos);
}

TEST_CASE("cli cr subcommand") {
  auto r = run_cli("cr A9 --p 2 --lambda \xcf\x89"
                   "2 --mu \xcf\x89"
                   "9 --json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"verdict\":\"CR\"") != std::string::npos);

  auto n = run_cli("cr G2 --p 2 --lambda 1,0 --mu 0,1");
  CHECK(n.exit_code == 0);
  CHECK(n.output.find("NotCR") != std::string::npos);

  auto z = run_cli("cr A1 --p 2 --lambda 0 --mu 1");
  CHECK(z.exit_code == 0);
  CHECK(z.output.find("CR") != std::string::npos);
}

TEST_CASE("cli error handling and dry run") {
  CHECK(run_cli("cr G2 --lambda 1,0 --mu 0,1").exit_code == 2);
  CHECK(run_cli("reproduce nosuchsuite").exit_code == 2);
  CHECK(run_cli("char G2 --p 3 --weight bogus! --simple").exit_code == 2);

  auto d = run_cli("reproduce g2p2 --dry-run");
  CHECK(d.exit_code == 0);
  CHECK(d.output.find("g2p2/") != std::string::npos);
}
