#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

#include "repcr/jantzen.hpp"
#include "repcr/rootdatum.hpp"
#include "repcr/steinberg.hpp"
#include "repcr/weights.hpp"

using namespace repcr;

TEST_CASE("p-digit decomposition") {
  auto d1 = p_digits({2, 1}, 3);
  CHECK(d1.digits == std::vector<Weight>{{2, 1}});

  auto d2 = p_digits({5, 0}, 3);
  CHECK(d2.digits == std::vector<Weight>{{2, 0}, {1, 0}});

  auto d3 = p_digits({3}, 2);
  CHECK(d3.digits == std::vector<Weight>{{1}, {1}});

  // Reassembly is the identity; digits are restricted.
  std::mt19937 rng(7);
  RootDatum a3 = parse_root_datum("A3");
  for (int trial = 0; trial < 200; ++trial) {
    const int p = (trial % 2) ? 2 : 5;
    Weight w{int(rng() % 30), int(rng() % 30), int(rng() % 30)};
    auto dd = p_digits(w, p);
    CHECK(dd.reassemble() == w);
    for (const auto& digit : dd.digits) CHECK(a3.is_p_restricted(digit, p));
    if (dd.digits.size() > 1) CHECK_FALSE(is_zero(dd.digits.back()));
  }
}

TEST_CASE("Steinberg simple characters") {
  RootDatum a1 = parse_root_datum("A1");
  auto restricted = [&](const RootDatum& rd, int p) {
    return [&rd, p](const Weight& d) { return simple_character(rd, d, p); };
  };
  auto st = steinberg_simple_char(a1, {3}, 2, restricted(a1, 2));
  REQUIRE(st);
  CHECK(mass(*st) == 4);

  RootDatum b3 = parse_root_datum("B3");
  auto tw = steinberg_simple_char(b3, {0, 0, 2}, 2, restricted(b3, 2));
  REQUIRE(tw);
  CHECK(mass(*tw) == 8);
  auto spin = simple_character(b3, {0, 0, 1}, 2);
  REQUIRE(spin);
  CHECK(*tw == frobenius_twist(*spin, 2));

  // Restricted weights: identical to the Jantzen engine's character.
  RootDatum g2 = parse_root_datum("G2");
  for (const Weight& w : std::vector<Weight>{{1, 0}, {2, 1}, {0, 2}}) {
    auto a = steinberg_simple_char(g2, w, 3, restricted(g2, 3));
    auto b = simple_character(g2, w, 3);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(*a == *b);
  }

  // Non-restricted spot check: ch L(5w1) = ch L(2w1) * twist(ch L(w1)).
  auto l5 = simple_character(g2, {5, 0}, 3);
  auto l2 = simple_character(g2, {2, 0}, 3);
  auto l1 = simple_character(g2, {1, 0}, 3);
  REQUIRE((l5 && l2 && l1));
  CHECK(*l5 == tensor(*l2, frobenius_twist(*l1, 3)));
}

TEST_CASE("refined factorization applicability") {
  CHECK(refined_factorization_applies('B', 2));
  CHECK(refined_factorization_applies('C', 2));
  CHECK(refined_factorization_applies('F', 2));
  CHECK(refined_factorization_applies('G', 3));
  CHECK_FALSE(refined_factorization_applies('A', 2));
  CHECK_FALSE(refined_factorization_applies('G', 2));
  CHECK_FALSE(refined_factorization_applies('B', 3));
}

TEST_CASE("refined split weights") {
  RootDatum g2 = parse_root_datum("G2");
  auto s = refined_split(g2, {1, 1}, 3);
  CHECK(s.lambda_l == Weight{0, 1});
  CHECK(s.lambda_s == Weight{1, 0});

  RootDatum b3 = parse_root_datum("B3");
  auto t = refined_split(b3, {1, 1, 1}, 2);
  CHECK(t.lambda_l == Weight{1, 1, 0});
  CHECK(t.lambda_s == Weight{0, 0, 1});

  auto u = refined_split(b3, {1, 1, 0}, 2);
  CHECK(u.lambda_l == Weight{1, 1, 0});
  CHECK(is_zero(u.lambda_s));

  CHECK_THROWS_AS(refined_split(parse_root_datum("A2"), {1, 0}, 2),
                  std::invalid_argument);
}

TEST_CASE("refined factorization character identities") {
  // ch L(lambda) = ch L(lambda_l) * ch L(lambda_s) on all restricted weights.
  for (const auto& [s, p] :
       std::vector<std::pair<const char*, int>>{{"B3", 2}, {"C3", 2},
                                                {"G2", 3}}) {
    RootDatum rd = parse_root_datum(s);
    std::vector<Weight> box;
    Weight w(rd.rank, 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == rd.rank) {
        box.push_back(w);
        return;
      }
      for (int c = 0; c < p; ++c) {
        w[i] = c;
        rec(i + 1);
      }
      w[i] = 0;
    };
    rec(0);
    for (const auto& lambda : box) {
      auto sp = refined_split(rd, lambda, p);
      auto full = simple_character(rd, lambda, p);
      auto cl = simple_character(rd, sp.lambda_l, p);
      auto cs = simple_character(rd, sp.lambda_s, p);
      REQUIRE(full);
      REQUIRE(cl);
      REQUIRE(cs);
      CHECK(*full == tensor(*cl, *cs));
    }
  }
}
