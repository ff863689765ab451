#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "repcr/character.hpp"
#include "repcr/jantzen.hpp"
#include "repcr/rootdatum.hpp"
#include "repcr/weakmax.hpp"
#include "repcr/weights.hpp"

using namespace repcr;

TEST_CASE("natural and spin modules") {
  auto a1 = natural_module('A', 1, 2);
  CHECK(a1->dim == 2);
  CHECK(std::set<Weight>(a1->weights.begin(), a1->weights.end()) ==
        std::set<Weight>{{1}, {-1}});

  auto c3 = natural_module('C', 3, 2);
  CHECK(c3->dim == 6);

  auto spin = spin_module(3, 2);
  CHECK(spin->dim == 8);
  RootDatum b3 = parse_root_datum("B3");
  auto orbit = b3.weyl_orbit({0, 0, 1});
  std::set<Weight> orbit_set(orbit.begin(), orbit.end());
  for (const auto& w : spin->weights) CHECK(orbit_set.count(w) == 1);
}

TEST_CASE("action matrices respect the weight grading") {
  for (const auto& mod : {natural_module('C', 3, 2), spin_module(3, 3)}) {
    const auto& V = *mod;
    for (const auto& [key, mats] : V.act) {
      const auto& alpha = V.rd.positive_roots[key.first];
      const Weight step = V.rd.root_to_weight(alpha);
      for (size_t r = 1; r <= mats.size(); ++r) {
        for (int j = 0; j < V.dim; ++j)
          for (const auto& [i, val] : mats[r - 1][j]) {
            REQUIRE(val != 0);
            Weight expect = V.weights[j];
            for (int c = 0; c < V.rd.rank; ++c)
              expect[c] += key.second * static_cast<int>(r) * step[c];
            CHECK(V.weights[i] == expect);
          }
      }
    }
  }
}

TEST_CASE("tensor products of explicit modules") {
  RootDatum a1 = parse_root_datum("A1");
  auto L1 = simple_module(a1, {1}, 2);
  auto triv = simple_module(a1, {0}, 2);
  CHECK(triv->dim == 1);
  auto V = tensor_modules(*L1, *triv);
  CHECK(V.dim == L1->dim);
  CHECK(V.weights == L1->weights);

  auto T = tensor_modules(*L1, *L1);
  CHECK(T.dim == 4);
  CHECK(weakly_maximal_vectors(T, {0}).size() == 1);
  CHECK(maximal_vectors(T, {2}).size() == 1);
  CHECK_FALSE(is_cr_g(T));
  CHECK_FALSE(is_cr_g1(T));

  // lambda + mu not restricted: the product of highest vectors generates a
  // non-simple restricted submodule.
  FpVec top(T.dim, 0);
  top[T.hw] = 1;
  CHECK_FALSE(generates_simple_g1(T, top));
}

TEST_CASE("frobenius twist module") {
  RootDatum a1 = parse_root_datum("A1");
  auto L1 = simple_module(a1, {1}, 2);
  auto tw = frobenius_twist_module(*L1);
  CHECK(tw.dim == L1->dim);
  CHECK(std::set<Weight>(tw.weights.begin(), tw.weights.end()) ==
        std::set<Weight>{{2}, {-2}});
}

TEST_CASE("Weyl and simple modules") {
  RootDatum a3 = parse_root_datum("A3");
  auto W = weyl_module(a3, {1, 0, 1}, 2);
  CHECK(W->dim == 15);
  auto L = simple_module(a3, {1, 0, 1}, 2);
  CHECK(L->dim == 14);

  RootDatum g2 = parse_root_datum("G2");
  CHECK(weyl_module(g2, {0, 1}, 3)->dim == 14);
  CHECK(simple_module(g2, {0, 1}, 3)->dim == 7);
  CHECK(simple_module(g2, {1, 0}, 3)->dim == 7);

  // Minuscule: Weyl = simple = fundamental module.
  CHECK(weyl_module(a3, {0, 1, 0}, 2)->dim == 6);
  CHECK(simple_module(a3, {0, 1, 0}, 2)->dim == 6);

  // Weight multiset of the explicit simple module matches the character
  // engine.
  auto ch = simple_character(g2, {0, 1}, 3);
  REQUIRE(ch);
  Character got;
  for (const auto& w : simple_module(g2, {0, 1}, 3)->weights) got[w] += 1;
  CHECK(got == *ch);

  // The simple quotient is restricted-simple and G-CR.
  auto Lg = simple_module(g2, {0, 1}, 3);
  FpVec top(Lg->dim, 0);
  top[Lg->hw] = 1;
  CHECK(generates_simple_g1(*Lg, top));
  CHECK(is_cr_g1(*Lg));
  CHECK(is_cr_g(*Lg));
  CHECK(hom_weyl_dim(*Lg, {0, 1}) == 1);
  CHECK(hom_simple_dim(*Lg, {0, 1}) == 1);
}

TEST_CASE("raising weakly maximal vectors") {
  RootDatum g2 = parse_root_datum("G2");
  auto A = simple_module(g2, {1, 0}, 2);
  auto B = simple_module(g2, {0, 1}, 2);
  auto V = tensor_modules(*A, *B);
  const Weight top = add({1, 0}, {0, 1});

  FpVec hv(V.dim, 0);
  hv[V.hw] = 1;
  CHECK(is_weakly_maximal(V, hv));
  CHECK_FALSE(raise_weakly_maximal(*A, *B, hv).has_value());

  int height_bound =
      static_cast<int>(g2.positive_roots.size()) *
      (g2.pairing(add({1, 0}, {0, 1}), g2.highest_root) + 8);
  std::set<Weight> support(V.weights.begin(), V.weights.end());
  for (const auto& delta : support) {
    for (auto v : weakly_maximal_vectors(V, delta)) {
      Weight w = delta;
      int steps = 0;
      while (w != top) {
        auto step = raise_weakly_maximal(*A, *B, v);
        REQUIRE(step.has_value());
        CHECK(is_weakly_maximal(V, step->second));
        Weight next = add(w, g2.root_to_weight(step->first));
        CHECK(g2.dominance_leq(g2.dominant_conjugate(w),
                               g2.dominant_conjugate(next)));
        v = step->second;
        w = V.weight_of(v);
        CHECK(w == next);
        REQUIRE(++steps <= height_bound);
      }
    }
  }

  CHECK_FALSE(is_cr_g1(V));
}

TEST_CASE("suprunenko injectivity") {
  RootDatum a2 = parse_root_datum("A2");
  auto L = simple_module(a2, {1, 1}, 5);
  CHECK(suprunenko_check(*L, {1, 1}, {1, 1}, 1));
  CHECK(suprunenko_check(*L, {1, 1}, {1, 1}, 2));

  auto L2 = simple_module(a2, {2, 1}, 3);
  std::set<Weight> support(L2->weights.begin(), L2->weights.end());
  for (const auto& delta : support) {
    auto diff = a2.root_coords(sub(Weight{2, 1}, delta));
    if (!diff) continue;
    for (int alpha = 1; alpha <= 2; ++alpha)
      if ((*diff)[alpha - 1] == 0)
        CHECK(suprunenko_check(*L2, {2, 1}, delta, alpha));
  }

  auto spin = spin_module(3, 2);
  CHECK_THROWS_AS(suprunenko_check(*spin, {0, 0, 1}, {0, 0, 1}, 1),
                  std::invalid_argument);
}

TEST_CASE("key lemma contrapositive") {
  // If p does not divide <delta, alpha vee> + 1, write it as pq + r with
  // 0 < r < p.  A weakly maximal v with X_{-alpha, r} v != 0 cannot generate
  // a simple restricted submodule.
  RootDatum a2 = parse_root_datum("A2");
  auto A = simple_module(a2, {1, 0}, 2);
  auto B = simple_module(a2, {1, 1}, 2);
  auto V = tensor_modules(*A, *B);
  const int p = 2;
  std::set<Weight> support(V.weights.begin(), V.weights.end());
  int exercised = 0;
  for (const auto& delta : support) {
    for (const auto& v : weakly_maximal_vectors(V, delta)) {
      for (int alpha = 1; alpha <= 2; ++alpha) {
        const int c = delta[alpha - 1] + 1;
        if (c % p == 0) continue;
        const int r = ((c % p) + p) % p;
        REQUIRE(r > 0);
        FpVec img =
            V.apply(zdetail::simple_root_index(a2, alpha), -1, r, v);
        bool nonzero = false;
        for (int x : img)
          if (x != 0) nonzero = true;
        if (nonzero) {
          CHECK_FALSE(generates_simple_g1(V, v));
          ++exercised;
        }
      }
    }
  }
  CHECK(exercised > 0);
}

TEST_CASE("serialization round trip") {
  const ExplicitModule& m = *natural_module('C', 3, 2);
  std::string s = serialize_module(m);
  ExplicitModule m2 = deserialize_module(s);
  CHECK(m2.dim == m.dim);
  CHECK(m2.hw == m.hw);
  CHECK(m2.weights == m.weights);
  CHECK(serialize_module(m2) == s);
}

TEST_CASE("disk cache is byte-identical to reconstruction") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "repcr-cache-test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  ::setenv("REPCR_CACHE_DIR", dir.c_str(), 1);
  auto mod = natural_module('A', 4, 7);  // key not used elsewhere in this test
  ::unsetenv("REPCR_CACHE_DIR");
  bool found = false;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    if (ss.str() == serialize_module(*mod)) {
      found = true;
      ExplicitModule back = deserialize_module(ss.str());
      CHECK(serialize_module(back) == ss.str());
    }
  }
  CHECK(found);
  fs::remove_all(dir);
}
