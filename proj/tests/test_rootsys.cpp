#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "repcr/rootdatum.hpp"
#include "repcr/weights.hpp"

using namespace repcr;

namespace {

std::vector<RootDatum> standard_data() {
  std::vector<RootDatum> out;
  for (const char* s : {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3",
                        "C4", "D4", "F4", "G2"})
    out.push_back(parse_root_datum(s));
  return out;
}

}  // namespace

TEST_CASE("positive root counts and highest roots") {
  RootDatum g2 = parse_root_datum("G2");
  CHECK(g2.positive_roots.size() == 6);
  CHECK(g2.highest_root == RootVec{3, 2});

  RootDatum a1 = parse_root_datum("A1");
  CHECK(a1.positive_roots.size() == 1);
  CHECK(a1.cartan[0][0] == 2);

  RootDatum c3 = parse_root_datum("C3");
  CHECK(c3.positive_roots.size() == 9);

  for (const auto& rd : standard_data()) {
    // highest_root dominates every positive root coordinatewise.
    for (const auto& beta : rd.positive_roots)
      for (int i = 0; i < rd.rank; ++i) CHECK(rd.highest_root[i] >= beta[i]);
    // Closure: beta + gamma is a root iff it appears in the set.
    std::set<RootVec> pos(rd.positive_roots.begin(), rd.positive_roots.end());
    for (const auto& b : rd.positive_roots)
      for (const auto& c : rd.positive_roots) {
        RootVec s(rd.rank);
        for (int i = 0; i < rd.rank; ++i) s[i] = b[i] + c[i];
        CHECK(rd.is_root(s) == (pos.count(s) > 0));
      }
  }
}

TEST_CASE("pairing against coroots") {
  RootDatum g2 = parse_root_datum("G2");
  // <a w1 + b w2, alpha_0 vee> = a + 2b.
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      CHECK(g2.pairing({a, b}, g2.highest_root) == a + 2 * b);

  RootDatum a3 = parse_root_datum("A3");
  CHECK(a3.pairing({1, 0, 1}, a3.highest_root) == 2);

  for (const auto& rd : standard_data()) {
    for (int i = 1; i <= rd.rank; ++i)
      for (int j = 1; j <= rd.rank; ++j) {
        RootVec alpha(rd.rank, 0);
        alpha[j - 1] = 1;
        CHECK(rd.pairing(fundamental_weight(rd.rank, i), alpha) ==
              (i == j ? 1 : 0));
      }
    // pairing(rho, alpha_i) = 1 for all simple roots.
    for (int j = 0; j < rd.rank; ++j) {
      RootVec alpha(rd.rank, 0);
      alpha[j] = 1;
      CHECK(rd.pairing(rd.rho, alpha) == 1);
    }
  }
}

TEST_CASE("dominance and restrictedness predicates") {
  RootDatum g2 = parse_root_datum("G2");
  CHECK(g2.is_dominant({0, 0}));
  CHECK(g2.is_p_restricted({0, 0}, 2));
  CHECK(g2.is_dominant({5, 0}));
  CHECK_FALSE(g2.is_p_restricted({5, 0}, 3));

  RootDatum a2 = parse_root_datum("A2");
  for (int p : {2, 3, 5}) {
    Weight boundary{p - 1, p - 1};
    CHECK(a2.is_p_restricted(boundary, p));
    CHECK_FALSE(a2.is_p_restricted(scale(2, boundary), p));
  }

  CHECK(a2.dominance_leq({1, 1}, {1, 1}));
  CHECK(a2.dominance_leq({0, 0}, {1, 1}));
  CHECK_FALSE(a2.dominance_leq({1, 0}, {0, 1}));

  // Partial order on a small weight set.
  std::vector<Weight> ws;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) ws.push_back({a, b});
  for (const auto& x : ws) {
    CHECK(a2.dominance_leq(x, x));
    for (const auto& y : ws)
      for (const auto& z : ws)
        if (a2.dominance_leq(x, y) && a2.dominance_leq(y, z))
          CHECK(a2.dominance_leq(x, z));
    for (const auto& y : ws)
      if (a2.dominance_leq(x, y) && a2.dominance_leq(y, x)) CHECK(x == y);
  }
}

TEST_CASE("dominant weights below") {
  RootDatum g2 = parse_root_datum("G2");
  auto below0 = g2.dominant_weights_below({0, 0});
  CHECK(below0 == std::vector<Weight>{{0, 0}});

  auto got = g2.dominant_weights_below({0, 1});
  std::set<Weight> expect{{0, 1}, {1, 0}, {0, 0}};
  CHECK(std::set<Weight>(got.begin(), got.end()) == expect);

  // Downward closure inside X+ (brute-force box check, A3).
  RootDatum a3 = parse_root_datum("A3");
  Weight lambda{0, 1, 1};
  auto below = a3.dominant_weights_below(lambda);
  std::set<Weight> below_set(below.begin(), below.end());
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (int c = 0; c <= 2; ++c) {
        Weight mu{a, b, c};
        CHECK(below_set.count(mu) ==
              (a3.dominance_leq(mu, lambda) ? 1u : 0u));
      }
  for (const auto& mu : below)
    for (const auto& nu : below)
      if (a3.dominance_leq(nu, mu)) CHECK(below_set.count(nu) == 1);
}

TEST_CASE("levi truncation") {
  RootDatum b4 = parse_root_datum("B4");
  auto lt = levi_truncate(b4, {1, 2, 3});
  CHECK(lt.datum.type_letter == 'A');
  CHECK(lt.datum.rank == 3);
  CHECK(lt.map_weight({1, 0, 2, 5}) == Weight{1, 0, 2});

  auto full = levi_truncate(b4, {1, 2, 3, 4});
  CHECK(full.datum.type_letter == 'B');
  CHECK(full.map_weight({1, 2, 0, 1}) == Weight{1, 2, 0, 1});

  RootDatum f4 = parse_root_datum("F4");
  auto c3 = levi_truncate(f4, {2, 3, 4});
  CHECK(c3.datum.type_letter == 'C');
  CHECK(c3.datum.rank == 3);
}

TEST_CASE("long/short splits") {
  RootDatum g2 = parse_root_datum("G2");
  auto [gl, gs] = g2.long_short_split({2, 1});
  CHECK(gl == Weight{0, 1});
  CHECK(gs == Weight{2, 0});

  RootDatum b3 = parse_root_datum("B3");
  auto [bl, bs] = b3.long_short_split({0, 0, 1});
  CHECK(bl == Weight{0, 0, 0});
  CHECK(bs == Weight{0, 0, 1});

  // Idempotence: splitting a long-part weight returns it unchanged.
  auto [bl2, bs2] = b3.long_short_split(bl);
  CHECK(bl2 == bl);
  CHECK(is_zero(bs2));
  for (const auto& rd : {parse_root_datum("B4"), parse_root_datum("C3"),
                         parse_root_datum("F4"), parse_root_datum("G2")}) {
    Weight w(rd.rank, 1);
    auto [l, s] = rd.long_short_split(w);
    CHECK(add(l, s) == w);
  }
}

TEST_CASE("root pair properties") {
  for (const auto& rd : standard_data()) {
    if (rd.type_letter == 'G') continue;
    for (const auto& alpha : rd.positive_roots)
      for (const auto& beta : rd.positive_roots) {
        const int c = rd.pairing(rd.root_to_weight(beta), alpha);
        if (c >= 0) continue;
        CHECK((c == -1 || c == -2));
        RootVec diff(rd.rank);
        for (int i = 0; i < rd.rank; ++i) diff[i] = beta[i] - alpha[i];
        CHECK_FALSE(rd.is_root(diff));
      }
    // Simply laced and B/C/F at p > 2: -<beta, alpha vee> < p for simple
    // alpha, i.e. the pairing never drops below -2.
    for (const auto& beta : rd.positive_roots)
      for (int j = 0; j < rd.rank; ++j) {
        RootVec alpha(rd.rank, 0);
        alpha[j] = 1;
        CHECK(rd.pairing(rd.root_to_weight(beta), alpha) >= -2);
      }
  }

  // C_n: <beta, alpha vee> = -2 for simple alpha forces some simple gamma
  // with <beta, gamma vee> = 2.
  for (const char* s : {"C2", "C3", "C4"}) {
    RootDatum rd = parse_root_datum(s);
    for (const auto& beta : rd.positive_roots)
      for (int j = 0; j < rd.rank; ++j) {
        RootVec alpha(rd.rank, 0);
        alpha[j] = 1;
        if (rd.pairing(rd.root_to_weight(beta), alpha) != -2) continue;
        bool found = false;
        for (int k = 0; k < rd.rank; ++k) {
          RootVec gamma(rd.rank, 0);
          gamma[k] = 1;
          if (rd.pairing(rd.root_to_weight(beta), gamma) == 2) found = true;
        }
        CHECK(found);
      }
  }
}

TEST_CASE("weight text round trip") {
  CHECK(parse_weight("2,1", 2) == Weight{2, 1});
  CHECK(parse_weight("w1+2w3", 3) == Weight{1, 0, 2});
  CHECK(parse_weight("\xcf\x89"
                     "2",
                     3) == Weight{0, 1, 0});
  CHECK(weight_to_string({2, 1}) == "2,1");
  CHECK_THROWS_AS(parse_weight("1,2", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_weight("w5", 3), std::invalid_argument);
}
