#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "repcr/jantzen.hpp"
#include "repcr/rootdatum.hpp"
#include "repcr/weights.hpp"

using namespace repcr;

namespace {

const std::vector<Weight> g2_low = {{1, 0}, {2, 0}, {3, 0}, {0, 1}, {1, 1}};

}  // namespace

TEST_CASE("p-adic valuation") {
  CHECK(nu_p(1, 2) == 0);
  CHECK(nu_p(8, 2) == 3);
  CHECK(nu_p(45, 3) == 2);
  CHECK_THROWS_AS(nu_p(0, 2), std::invalid_argument);
}

TEST_CASE("bottom alcove closure test") {
  RootDatum g2 = parse_root_datum("G2");
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int p : {5, 7, 11})
        CHECK(in_bottom_alcove_closure(g2, {a, b}, p) ==
              (2 * a + 3 * b + 5 <= p));
  CHECK_FALSE(in_bottom_alcove_closure(g2, {2, 0}, 7));

  RootDatum a3 = parse_root_datum("A3");
  CHECK(in_bottom_alcove_closure(a3, {0, 0, 0}, 5));
}

TEST_CASE("G2 p=5: the five low Weyl modules are simple") {
  RootDatum g2 = parse_root_datum("G2");
  for (const auto& d1 : g2_low) {
    CHECK(g2.pairing(d1, g2.highest_root) < 4);
    CHECK(jantzen_sum(g2, d1, 5).empty());
    auto wcf = weyl_comp_factors(g2, d1, 5);
    CHECK(wcf.determined);
    CHECK(wcf.factors == std::map<Weight, long long>{{d1, 1}});
  }
}

TEST_CASE("G2 p=7: Delta(2w1) is the unique low Weyl module with L(0)") {
  RootDatum g2 = parse_root_datum("G2");
  Character js = jantzen_sum(g2, {2, 0}, 7);
  CHECK_FALSE(js.empty());
  CHECK(js.count(Weight{0, 0}) == 1);
  for (const auto& d1 : g2_low) {
    auto wcf = weyl_comp_factors(g2, d1, 7);
    REQUIRE(wcf.determined);
    CHECK((wcf.factors.count(Weight{0, 0}) > 0) == (d1 == Weight{2, 0}));
  }
}

TEST_CASE("Jantzen sum support is strongly linked") {
  for (const auto& [s, lambda, p] :
       std::vector<std::tuple<const char*, Weight, int>>{
           {"G2", {1, 1}, 3}, {"B3", {0, 1, 0}, 2}, {"A3", {1, 0, 1}, 2}}) {
    RootDatum rd = parse_root_datum(s);
    auto cls = linkage_class_below(rd, lambda, p);
    for (const auto& [mu, c] : jantzen_chi_coeffs(rd, lambda, p)) {
      CHECK(c > 0);
      CHECK(cls.count(mu) == 1);
      CHECK(rd.dominance_leq(mu, lambda));
    }
  }
}

TEST_CASE("Weyl module factors in type A at p=2") {
  for (int n = 2; n <= 5; ++n) {
    RootDatum rd = build_root_datum('A', n);
    Weight l = add(fundamental_weight(n, 1), fundamental_weight(n, n));
    auto wcf = weyl_comp_factors(rd, l, 2);
    REQUIRE(wcf.determined);
    if (n % 2 == 0) {
      CHECK(wcf.factors == std::map<Weight, long long>{{l, 1}});
    } else {
      CHECK(wcf.factors.size() == 2);
      CHECK(wcf.factors.count(zero_weight(n)) == 1);
    }
  }
  for (int n = 4; n <= 6; ++n) {
    RootDatum rd = build_root_datum('A', n);
    Weight l = add(fundamental_weight(n, 2), fundamental_weight(n, n - 1));
    auto wcf = weyl_comp_factors(rd, l, 2);
    REQUIRE(wcf.determined);
    CHECK((wcf.factors.size() == 1) == (n % 4 == 2));
  }
}

TEST_CASE("simple characters") {
  RootDatum g2 = parse_root_datum("G2");
  auto c1 = simple_character(g2, {1, 0}, 3);
  auto c2 = simple_character(g2, {0, 1}, 3);
  REQUIRE(c1);
  REQUIRE(c2);
  CHECK(mass(*c1) == 7);
  CHECK(mass(*c2) == 7);
  CHECK(c1->at(Weight{1, 0}) == 1);

  // Minuscule weights: ch L = chi.
  RootDatum a3 = parse_root_datum("A3");
  for (int i = 1; i <= 3; ++i) {
    auto ch = simple_character(a3, fundamental_weight(3, i), 2);
    REQUIRE(ch);
    CHECK(*ch == weyl_character(a3, fundamental_weight(3, i)));
  }
  RootDatum b3 = parse_root_datum("B3");
  auto spin = simple_character(b3, {0, 0, 1}, 2);
  REQUIRE(spin);
  CHECK(*spin == weyl_character(b3, {0, 0, 1}));

  // Exact identity: sum of factor simples reassembles chi.
  for (const auto& lambda : std::vector<Weight>{{0, 1}, {1, 1}, {2, 0}}) {
    auto wcf = weyl_comp_factors(g2, lambda, 3);
    REQUIRE(wcf.determined);
    Character sum;
    for (const auto& [mu, m] : wcf.factors) {
      auto ch = simple_character(g2, mu, 3);
      REQUIRE(ch);
      add_to(sum, *ch, m);
    }
    CHECK(sum == weyl_character(g2, lambda));
  }

  // Weyl symmetry of a simple character.
  for (const auto& [w, m] : *c2)
    CHECK(c2->at(g2.dominant_conjugate(w)) == m);
}

TEST_CASE("tensor composition factors") {
  RootDatum g2 = parse_root_datum("G2");
  auto d1 = simple_tensor_comp_factors(g2, {1, 0}, {0, 1}, 2);
  REQUIRE(d1.determined);
  CHECK(d1.factors.count(Weight{2, 0}) == 1);

  RootDatum c3 = parse_root_datum("C3");
  auto d2 = simple_tensor_comp_factors(c3, {1, 0, 0}, {0, 1, 0}, 2);
  REQUIRE(d2.determined);
  CHECK(d2.factors.at(Weight{1, 0, 0}) == 2);

  auto d3 = simple_tensor_comp_factors(g2, {2, 1}, {0, 1}, 3);
  REQUIRE(d3.determined);
  std::vector<Weight> nonres;
  for (const auto& [w, m] : d3.factors)
    if (!g2.is_p_restricted(w, 3)) nonres.push_back(w);
  CHECK(nonres == std::vector<Weight>{{5, 0}});

  // Dimension bookkeeping: factors weighted by simple dimensions.
  long long total = 0;
  for (const auto& [w, m] : d2.factors) {
    auto ch = simple_character(c3, w, 2);
    REQUIRE(ch);
    total += m * mass(*ch);
  }
  auto a = simple_character(c3, {1, 0, 0}, 2);
  auto b = simple_character(c3, {0, 1, 0}, 2);
  CHECK(total == mass(*a) * mass(*b));
}
