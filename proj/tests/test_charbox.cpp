#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>

#include "repcr/character.hpp"
#include "repcr/rootdatum.hpp"
#include "repcr/weights.hpp"

using namespace repcr;

TEST_CASE("weyl character and dimension basics") {
  RootDatum g2 = parse_root_datum("G2");
  CHECK(weyl_character(g2, {0, 0}) == Character{{{0, 0}, 1}});
  CHECK(mass(weyl_character(g2, {1, 0})) == 7);
  CHECK(weyl_dim(g2, {0, 1}) == 14);

  RootDatum c3 = parse_root_datum("C3");
  CHECK(weyl_dim(c3, {1, 0, 0}) == 6);

  for (int n = 2; n <= 6; ++n) {
    RootDatum a = build_root_datum('A', n);
    CHECK(weyl_dim(a, fundamental_weight(n, 2)) == n * (n + 1) / 2);
  }

  // weyl_dim equals the total mass of weyl_character.
  for (const Weight& w : std::vector<Weight>{{1, 1}, {2, 0}, {0, 2}})
    CHECK(weyl_dim(g2, w) == mass(weyl_character(g2, w)));
}

TEST_CASE("character support is Weyl symmetric") {
  for (const char* s : {"A2", "B2", "G2"}) {
    RootDatum rd = parse_root_datum(s);
    Character ch = weyl_character(rd, {1, 1});
    for (const auto& [w, m] : ch) {
      for (const auto& conj : rd.weyl_orbit(w)) {
        auto it = ch.find(conj);
        REQUIRE(it != ch.end());
        CHECK(it->second == m);
      }
    }
  }
}

TEST_CASE("tensor products of characters") {
  RootDatum a1 = parse_root_datum("A1");
  for (int b = 0; b <= 4; ++b)
    for (int d = 0; d <= 4; ++d) {
      Character lhs = tensor(weyl_character(a1, {b}), weyl_character(a1, {d}));
      Character rhs;
      for (int r = 0; r <= std::min(b, d); ++r)
        add_to(rhs, weyl_character(a1, {b + d - 2 * r}));
      CHECK(lhs == rhs);
    }

  RootDatum g2 = parse_root_datum("G2");
  Character ch = weyl_character(g2, {1, 0});
  CHECK(tensor(ch, Character{{{0, 0}, 1}}) == ch);
  CHECK(mass(tensor(ch, ch)) == 49);

  // Mass multiplicativity.
  Character a = weyl_character(g2, {0, 1});
  CHECK(mass(tensor(a, ch)) == mass(a) * mass(ch));
}

TEST_CASE("frobenius twist") {
  RootDatum a1 = parse_root_datum("A1");
  CHECK(frobenius_twist(Character{{{0}, 1}}, 3) == Character{{{0}, 1}});
  Character ch = weyl_character(a1, {1});
  Character tw = frobenius_twist(ch, 2);
  CHECK(tw == Character{{{2}, 1}, {{-2}, 1}});
  CHECK(mass(tw) == mass(ch));
}

TEST_CASE("decomposition into Weyl characters") {
  RootDatum a3 = parse_root_datum("A3");
  CHECK(decompose_into_weyl(a3, weyl_character(a3, {0, 1, 1})) ==
        std::map<Weight, long long>{{{0, 1, 1}, 1}});

  auto dec = decompose_into_weyl(
      a3, tensor(weyl_character(a3, {1, 0, 0}), weyl_character(a3, {0, 0, 1})));
  CHECK(dec == std::map<Weight, long long>{{{1, 0, 1}, 1}, {{0, 0, 0}, 1}});

  // A_n, 2 < j < n: three sections.
  RootDatum a6 = build_root_datum('A', 6);
  for (int j = 3; j <= 5; ++j) {
    auto d = gf_mults(a6, fundamental_weight(6, 2), fundamental_weight(6, j));
    std::map<Weight, long long> expect{
        {add(fundamental_weight(6, 2), fundamental_weight(6, j)), 1},
        {add(fundamental_weight(6, 1), fundamental_weight(6, j + 1)), 1}};
    // The third section drops to the trivial weight when j + 2 = n + 1.
    if (j + 2 <= 6)
      expect[fundamental_weight(6, j + 2)] = 1;
    else
      expect[zero_weight(6)] = 1;
    CHECK(d == expect);
  }

  // Left inverse of assembly.
  RootDatum g2 = parse_root_datum("G2");
  std::map<Weight, long long> coeffs{{{2, 0}, 2}, {{0, 1}, 1}, {{1, 0}, 3}};
  Character assembled;
  for (const auto& [w, m] : coeffs) add_to(assembled, weyl_character(g2, w), m);
  CHECK(decompose_into_weyl(g2, assembled) == coeffs);
}

TEST_CASE("good filtration multiplicities") {
  RootDatum g2 = parse_root_datum("G2");
  auto d = gf_mults(g2, {1, 0}, {1, 0});
  CHECK(d.at(Weight{0, 1}) == 1);

  RootDatum a2 = parse_root_datum("A2");
  CHECK(gf_mults(a2, {1, 0}, {1, 0}) ==
        std::map<Weight, long long>{{{2, 0}, 1}, {{0, 1}, 1}});
  CHECK(gf_mults(a2, {0, 0}, {1, 1}) ==
        std::map<Weight, long long>{{{1, 1}, 1}});

  for (const auto& [l, m] : std::vector<std::pair<Weight, Weight>>{
           {{1, 0}, {0, 1}}, {{1, 1}, {1, 0}}, {{2, 0}, {0, 2}}}) {
    auto ab = gf_mults(g2, l, m);
    CHECK(ab == gf_mults(g2, m, l));
    CHECK(ab.at(add(l, m)) == 1);
  }
}

TEST_CASE("Freudenthal agrees with the alternating Weyl sum") {
  // Modest cross-check here; the full rank <= 4, dim <= 5000 sweep runs in
  // the acceptance gate.
  for (const char* s : {"A2", "B2", "C3", "G2"}) {
    RootDatum rd = parse_root_datum(s);
    Weight w(rd.rank, 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == rd.rank) {
        if (weyl_dim(rd, w) > 400) return;
        Character ch = weyl_character(rd, w);
        std::map<Weight, long long> dom;
        for (const auto& [x, m] : ch)
          if (rd.is_dominant(x)) dom[x] = m;
        CHECK(dom == weyl_character_alternating_dominant(rd, w));
        return;
      }
      for (int c = 0; c <= 3; ++c) {
        w[i] = c;
        rec(i + 1);
      }
      w[i] = 0;
    };
    rec(0);
  }
}
