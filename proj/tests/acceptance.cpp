/// Acceptance gate: runs every registered check that belongs to one of the
/// twelve acceptance criteria and prints one pass/fail line per criterion.
#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "repcr/suites.hpp"

int main() {
  using namespace repcr::suites;
  const auto t0 = std::chrono::steady_clock::now();

  std::map<int, std::vector<CheckResult>> by_criterion;
  for (auto& def : checks_for("all")) {
    if (def.criterion == 0) continue;
    CheckResult res;
    res.id = def.id;
    res.suite = def.suite;
    res.criterion = def.criterion;
    res.expected = def.expected;
    try {
      auto [actual, ok] = def.run();
      res.actual = actual;
      res.pass = ok;
    } catch (const std::exception& e) {
      res.actual = std::string("exception: ") + e.what();
      res.pass = false;
    }
    by_criterion[def.criterion].push_back(std::move(res));
  }

  int failed_criteria = 0;
  for (int crit = 1; crit <= 12; ++crit) {
    const auto& checks = by_criterion[crit];
    bool pass = !checks.empty();
    std::string detail;
    for (const auto& c : checks) {
      if (c.pass) continue;
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += c.id + ": " + c.actual;
    }
    if (pass) {
      detail = std::to_string(checks.size()) +
               (checks.size() == 1 ? " check" : " checks");
    } else if (checks.empty()) {
      detail = "no checks registered";
    }
    std::printf("criterion %2d: %s — %s\n", crit, pass ? "PASS" : "FAIL",
                detail.c_str());
    if (!pass) ++failed_criteria;
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("acceptance: %d/12 criteria passed in %.1fs\n",
              12 - failed_criteria, secs);
  return failed_criteria == 0 ? 0 : 1;
}
