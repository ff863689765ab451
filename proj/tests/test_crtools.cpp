#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "repcr/crtools.hpp"
#include "repcr/rootdatum.hpp"
#include "repcr/weights.hpp"

using namespace repcr;

namespace {

/// Brute force: does an increasing injection minus -> plus with phi(j) > j
/// exist?  Enumerates all order-preserving choices of targets.
bool brute_injection(std::vector<int> minus, std::vector<int> plus) {
  std::sort(minus.begin(), minus.end());
  std::sort(plus.begin(), plus.end());
  if (minus.size() > plus.size()) return false;
  std::vector<int> pick(minus.size(), 0);
  std::function<bool(size_t, size_t)> rec = [&](size_t i, size_t from) {
    if (i == minus.size()) return true;
    for (size_t k = from; k < plus.size(); ++k)
      if (plus[k] > minus[i] && rec(i + 1, k + 1)) return true;
    return false;
  };
  return rec(0, 0);
}

std::vector<Weight> restricted_box(int rank, int p) {
  std::vector<Weight> out;
  Weight w(rank, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == rank) {
      out.push_back(w);
      return;
    }
    for (int c = 0; c < p; ++c) {
      w[i] = c;
      rec(i + 1);
    }
    w[i] = 0;
  };
  rec(0);
  return out;
}

}  // namespace

TEST_CASE("partition correspondence") {
  CHECK(pi_of_weight({0, 1, 0}).parts == std::vector<int>{1, 1, 0, 0});
  CHECK(pi_of_weight({0, 0, 0}).parts == std::vector<int>{0, 0, 0, 0});
  // mu = w2 + w4 in A_5: shape (2,2,1,1,0,0).
  CHECK(pi_of_weight({0, 1, 0, 1, 0}).parts ==
        std::vector<int>{2, 2, 1, 1, 0, 0});

  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Weight mu{int(rng() % 4), int(rng() % 4), int(rng() % 4), int(rng() % 4)};
    Partition P = pi_of_weight(mu);
    for (int i = 2; i <= P.size(); ++i) CHECK(P.at(i - 1) >= P.at(i));
    CHECK(P.at(P.size()) == 0);
    CHECK(weight_of_partition(P) == mu);
    // (pi(mu) + eps_i)' = mu - omega_{i-1} + omega_i for addable i.
    for (int i = 1; i <= P.size(); ++i) {
      if (!is_addable(P, i)) continue;
      Partition Q = P;
      Q.parts[i - 1] += 1;
      CHECK(weight_of_partition(Q) == add_box_weight(mu, i));
    }
  }
}

TEST_CASE("conormal and cogood indices") {
  Partition P = pi_of_weight({0, 1, 0});
  CHECK(is_addable(P, 1));
  CHECK(M_minus(P, 1, 2).empty());
  CHECK(is_conormal(P, 1, 2));
  CHECK(conormal_set(P, 2) == std::vector<int>{1, 3});
  CHECK(cogood_set(P, 2) == std::vector<int>{1, 3});

  // Even-index mu: cogood set is {1, i_1 + 1}.
  for (const Weight& mu : std::vector<Weight>{{0, 1, 0, 0, 0},
                                              {0, 0, 0, 1, 0},
                                              {0, 1, 0, 1, 0}}) {
    int i1 = 0;
    for (size_t i = 0; i < mu.size(); ++i)
      if (mu[i] == 1) {
        i1 = static_cast<int>(i) + 1;
        break;
      }
    CHECK(cogood_set(pi_of_weight(mu), 2) == std::vector<int>{1, i1 + 1});
  }

  // cogood is a subset of conormal with at most one index per residue class.
  std::mt19937 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = (trial % 2) ? 2 : 3;
    Weight mu{int(rng() % 3), int(rng() % 3), int(rng() % 3), int(rng() % 3)};
    Partition Q = pi_of_weight(mu);
    auto conormal = conormal_set(Q, p);
    auto cogood = cogood_set(Q, p);
    std::set<int> res_seen;
    for (int i : cogood) {
      CHECK(std::find(conormal.begin(), conormal.end(), i) != conormal.end());
      CHECK(res_seen.insert(res(i, Q.at(i) + 1, p)).second);
    }
  }
}

TEST_CASE("greedy matching equals brute force") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 3000; ++trial) {
    const int nm = rng() % 7, np = rng() % 7;
    std::vector<int> minus(nm), plus(np);
    for (int& x : minus) x = rng() % 10;
    for (int& x : plus) x = rng() % 10;
    std::sort(minus.begin(), minus.end());
    std::sort(plus.begin(), plus.end());
    CHECK(has_increasing_injection(minus, plus) ==
          brute_injection(minus, plus));
  }
}

TEST_CASE("natural tensor classification") {
  auto v1 = natural_tensor_cr({0, 1, 0}, 2);
  CHECK(v1.verdict == Verdict::CR);
  std::set<Weight> summands;
  for (const auto& [w, m] : v1.summands) {
    CHECK(m == 1);
    summands.insert(w);
  }
  CHECK(summands == std::set<Weight>{{1, 1, 0}, {0, 0, 1}});

  CHECK(natural_tensor_cr({0, 0, 1}, 2).verdict == Verdict::NotCR);
  CHECK(natural_tensor_cr({0, 0, 0}, 2).verdict == Verdict::CR);
  CHECK(hom_weyl_set({0, 1, 0}, 2) == std::vector<int>{1, 3});
  CHECK(hom_simple_set({0, 0, 1}, 2).size() <
        hom_weyl_set({0, 0, 1}, 2).size());
}

TEST_CASE("A-type p=2 classifier") {
  RootDatum a9 = build_root_datum('A', 9);
  auto c3 = an_p2_classifier(a9, fundamental_weight(9, 2),
                             fundamental_weight(9, 9));
  CHECK(c3.verdict == Verdict::CR);
  CHECK(c3.rule == "an_p2_classifier:case3");

  CHECK(an_p2_classifier(a9, fundamental_weight(9, 2),
                         fundamental_weight(9, 7))
            .verdict == Verdict::NotCR);

  auto c1 = an_p2_classifier(a9, fundamental_weight(9, 1),
                             add(fundamental_weight(9, 2),
                                 fundamental_weight(9, 4)));
  CHECK(c1.verdict == Verdict::CR);
  CHECK(c1.rule == "an_p2_classifier:case1");

  CHECK(an_p2_classifier(a9, zero_weight(9), fundamental_weight(9, 3))
            .verdict == Verdict::CR);
  CHECK_THROWS_AS(
      an_p2_classifier(a9, scale(2, fundamental_weight(9, 1)),
                       fundamental_weight(9, 2)),
      std::invalid_argument);
}

TEST_CASE("necessary and sufficient rules") {
  RootDatum a2 = parse_root_datum("A2");
  for (int p : {2, 3, 5}) {
    Weight boundary{p - 1, p - 1};
    CHECK(necessary_sum_restricted(a2, boundary, boundary, p).verdict ==
          Verdict::NotCR);
  }
  RootDatum g2 = parse_root_datum("G2");
  CHECK(necessary_sum_restricted(g2, {1, 0}, {0, 1}, 2).verdict ==
        Verdict::Unknown);

  auto f1 = frobenius_factor_obstruction(g2, {1, 0}, {0, 1}, 2);
  CHECK(f1.verdict == Verdict::NotCR);
  CHECK(f1.witness == "1,0");
  auto f2 = frobenius_factor_obstruction(g2, {0, 1}, {0, 1}, 3);
  CHECK(f2.verdict == Verdict::NotCR);
  CHECK(f2.witness == "1,0");
  CHECK(frobenius_factor_obstruction(g2, {0, 0}, {0, 1}, 3).verdict ==
        Verdict::Unknown);

  CHECK(multiplicity_free_test(g2, {0, 0}, {1, 0}, 3).verdict == Verdict::CR);
  RootDatum a6 = build_root_datum('A', 6);
  CHECK(multiplicity_free_test(a6, fundamental_weight(6, 2),
                               fundamental_weight(6, 5), 2)
            .verdict == Verdict::CR);
  RootDatum c3 = parse_root_datum("C3");
  CHECK(multiplicity_free_test(c3, {1, 0, 0}, {0, 1, 0}, 2).verdict ==
        Verdict::Unknown);
}

TEST_CASE("serre propagation") {
  CRVerdict bad = CRVerdict::not_cr("smallprime_classifier");
  CRVerdict good = CRVerdict::cr("trivial");
  auto s1 = serre_propagation(7, bad, 3);
  CHECK(s1.verdict == Verdict::NotCR);
  CHECK(s1.rule == "serre:smallprime_classifier");
  CHECK(serre_propagation(1, good, 3).verdict == Verdict::CR);
  CHECK(serre_propagation(6, bad, 3).verdict == Verdict::Unknown);
  CHECK(serre_propagation(7, good, 3).verdict == Verdict::Unknown);
}

TEST_CASE("G2 inequalities at p > 3") {
  RootDatum g2 = parse_root_datum("G2");
  CHECK(g2_inequalities(g2, {1, 1}, {1, 1}, 5).verdict == Verdict::NotCR);
  CHECK(g2_inequalities(g2, {5, 0}, {0, 6}, 7).verdict == Verdict::Unknown);
  CHECK(g2_inequalities(g2, {0, 0}, {1, 0}, 5).verdict == Verdict::Unknown);
  CHECK_THROWS_AS(g2_inequalities(parse_root_datum("A2"), {1, 0}, {0, 1}, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(g2_inequalities(g2, {1, 0}, {0, 1}, 3),
                  std::invalid_argument);
}

TEST_CASE("levi propagation") {
  RootDatum f4 = parse_root_datum("F4");
  auto v = levi_propagation(f4, {0, 0, 1, 0}, {0, 0, 0, 1}, {2, 3, 4}, 2);
  CHECK(v.verdict == Verdict::NotCR);
  CHECK(v.rule.rfind("levi[2,3,4]:", 0) == 0);

  RootDatum b4 = parse_root_datum("B4");
  auto w = levi_propagation(b4, {0, 0, 1, 0}, {1, 0, 0, 0}, {1, 2, 3}, 2);
  CHECK(w.verdict == Verdict::NotCR);

  // One-directional: a CR truncation proves nothing.
  RootDatum a4 = build_root_datum('A', 4);
  CHECK(levi_propagation(a4, {1, 0, 0, 0}, {0, 1, 0, 0}, {1, 2}, 2).verdict ==
        Verdict::Unknown);
}

TEST_CASE("small-prime classifiers") {
  RootDatum g2 = parse_root_datum("G2");
  auto v = smallprime_classifier(g2, {0, 1}, {2, 0}, 3);
  CHECK(v.verdict == Verdict::CR);
  REQUIRE(v.summands.size() == 1);
  CHECK(v.summands[0] == std::pair<Weight, long long>{{2, 1}, 1});

  RootDatum f4 = parse_root_datum("F4");
  CHECK(smallprime_classifier(f4, {1, 1, 0, 0}, {0, 0, 1, 0}, 2).verdict ==
        Verdict::CR);
  RootDatum c3 = parse_root_datum("C3");
  CHECK(smallprime_classifier(c3, {1, 0, 0}, {0, 1, 0}, 2).verdict ==
        Verdict::NotCR);

  auto g = smallprime_classifier(g2, {1, 0}, {0, 1}, 2);
  CHECK(g.verdict == Verdict::NotCR);
  CHECK(g.rule == "frobenius_factor");

  CHECK_THROWS_AS(smallprime_classifier(parse_root_datum("D4"),
                                        {1, 0, 0, 0}, {0, 1, 0, 0}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(smallprime_classifier(g2, {3, 0}, {0, 1}, 3),
                  std::invalid_argument);
}

TEST_CASE("top-level decider") {
  RootDatum a2 = parse_root_datum("A2");
  auto cr = decide_cr(a2, {1, 2}, {2, 1}, 2);
  CHECK(cr.overall.verdict == Verdict::CR);
  CHECK(cr.overall.rule == "digit_conjunction");
  REQUIRE(cr.digits.size() == 2);
  for (const auto& tr : cr.digits) {
    CHECK(tr.verdict.verdict == Verdict::CR);
    auto dec = simple_tensor_comp_factors(a2, tr.lambda0, tr.mu0, 2);
    REQUIRE(dec.determined);
    for (const auto& [w, m] : dec.factors) CHECK(a2.is_p_restricted(w, 2));
  }

  CHECK(decide_cr(a2, {1, 2}, {0, 0}, 2).overall.verdict == Verdict::CR);

  RootDatum g2 = parse_root_datum("G2");
  CHECK(decide_cr(g2, {1, 2}, {1, 0}, 3).overall.verdict == Verdict::NotCR);

  // Symmetry and oracle agreement on small restricted pairs.
  DecideOptions opts;
  opts.use_oracle = true;
  for (const auto& l : restricted_box(2, 2))
    for (const auto& m : restricted_box(2, 2)) {
      auto ab = decide_cr(a2, l, m, 2, opts);
      auto ba = decide_cr(a2, m, l, 2, opts);
      CHECK(ab.overall.verdict == ba.overall.verdict);
      if (ab.overall.verdict != Verdict::Unknown) {
        auto A = simple_module(a2, l, 2);
        auto B = simple_module(a2, m, 2);
        CHECK((ab.overall.verdict == Verdict::CR) ==
              is_cr_g(tensor_modules(*A, *B)));
      }
    }
}
