#pragma once

// Composition factors of Weyl modules and simple characters via the Jantzen
// sum formula, linkage pruning, dominance recursion and a contravariant-form
// rank fallback.  Multiplicities the engine cannot pin down are reported as
// undetermined, never guessed.

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "repcr/character.hpp"
#include "repcr/rootdatum.hpp"
#include "repcr/steinberg.hpp"
#include "repcr/weakmax.hpp"
#include "repcr/weights.hpp"

namespace repcr {

/// p-adic valuation of a positive integer.
inline int nu_p(long long n, int p) {
  if (n <= 0) throw std::invalid_argument("nu_p: non-positive argument");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

namespace jdetail {

/// Dot-action normalization: w(mu + rho) - rho for the unique w making the
/// result dominant, together with the sign of w; empty optional when mu + rho
/// lies on a wall (the signed character chi(mu) is zero).
inline std::optional<std::pair<Weight, int>> dot_normalize(const RootDatum& rd,
                                                           const Weight& mu) {
  int reflections = 0;
  Weight dc = rd.dominant_conjugate(add(mu, rd.rho), &reflections);
  for (int x : dc)
    if (x == 0) return std::nullopt;
  return std::make_pair(sub(dc, rd.rho), reflections % 2 ? -1 : 1);
}

}  // namespace jdetail

/// Coefficients of the Jantzen sum Sum_{i>0} ch Delta^i(lambda) expressed in
/// the basis of Weyl characters chi(mu) (all mu dominant).
inline std::map<Weight, long long> jantzen_chi_coeffs(const RootDatum& rd,
                                                      const Weight& lambda,
                                                      int p) {
  if (!rd.is_dominant(lambda))
    throw std::invalid_argument("jantzen_chi_coeffs: non-dominant");
  std::map<Weight, long long> out;
  const Weight lr = add(lambda, rd.rho);
  for (const auto& alpha : rd.positive_roots) {
    const int c = rd.pairing(lr, alpha);
    const Weight aw = rd.root_to_weight(alpha);
    for (int mp = p; mp < c; mp += p) {
      const int val = nu_p(mp, p);
      const Weight mu = sub(lambda, scale(c - mp, aw));
      auto norm = jdetail::dot_normalize(rd, mu);
      if (!norm) continue;
      auto it = out.emplace(norm->first, 0).first;
      it->second += static_cast<long long>(val) * norm->second;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

/// The character Sum_{i>0} ch Delta^i(lambda) (Weyl-positive by construction).
inline Character jantzen_sum(const RootDatum& rd, const Weight& lambda,
                             int p) {
  Character out;
  for (const auto& [mu, c] : jantzen_chi_coeffs(rd, lambda, p))
    add_to(out, weyl_character(rd, mu), c);
  return out;
}

/// <lambda + rho, beta^vee> <= p for the highest short root beta; implies
/// Delta(lambda) simple by the linkage principle.
inline bool in_bottom_alcove_closure(const RootDatum& rd, const Weight& lambda,
                                     int p) {
  if (!rd.is_dominant(lambda))
    throw std::invalid_argument("in_bottom_alcove_closure: non-dominant");
  return rd.pairing(add(lambda, rd.rho), rd.highest_short_root) <= p;
}

/// Dominant weights mu <= lambda linked to lambda under the affine dot
/// action (connected component via single affine reflections).  Used to
/// validate that the sum-formula support is contained in the linkage class.
inline std::set<Weight> linkage_class_below(const RootDatum& rd,
                                            const Weight& lambda, int p) {
  auto below = rd.dominant_weights_below(lambda);
  std::set<Weight> candidates(below.begin(), below.end());
  std::set<Weight> cls{lambda};
  std::vector<Weight> queue{lambda};
  for (size_t q = 0; q < queue.size(); ++q) {
    const Weight nu = queue[q];
    const Weight nr = add(nu, rd.rho);
    for (const auto& alpha : rd.positive_roots) {
      const int c = rd.pairing(nr, alpha);
      const Weight aw = rd.root_to_weight(alpha);
      const int bound = 2 * rd.pairing(add(lambda, rd.rho), alpha);
      int t0 = c % p;
      if (t0 > 0) t0 -= p;
      while (t0 + p >= -bound) t0 -= p;  // start below the window
      for (int t = t0; t <= bound; t += p) {
        if (t == c) continue;
        // Affine dot reflection: nu + rho -> nu + rho - (c - t) alpha.
        auto norm = jdetail::dot_normalize(rd, sub(nu, scale(c - t, aw)));
        if (!norm) continue;
        const Weight& img = norm->first;
        if (!candidates.count(img)) continue;
        if (cls.insert(img).second) queue.push_back(img);
      }
    }
  }
  return cls;
}

/// Factors of a highest-weight object: multiplicities plus the set of
/// weights whose multiplicity could not be pinned down.
struct DecompositionResult {
  std::map<Weight, long long> factors;
  std::set<Weight> undetermined;
  std::optional<Weight> blocking;
  bool determined = true;
};

inline std::optional<Character> simple_character(const RootDatum& rd,
                                                 const Weight& lambda, int p);

/// ch L(lambda) from the explicit Weyl module: blockwise ranks of the
/// contravariant Gram matrix.  Independent of the sum formula.
inline std::optional<Character> gram_simple_char(const RootDatum& rd,
                                                 const Weight& lambda, int p) {
  try {
    auto W = weyl_module(rd, lambda, p);
    if (!W->gram) return std::nullopt;
    std::map<Weight, std::vector<int>> blocks;
    for (int j = 0; j < W->dim; ++j) blocks[W->weights[j]].push_back(j);
    Character ch;
    for (const auto& [w, idx] : blocks) {
      FpMat g(idx.size(), FpVec(idx.size(), 0));
      for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = 0; b < idx.size(); ++b)
          g[a][b] = (*W->gram)[idx[a]][idx[b]];
      const int r = fp_rank(std::move(g), p);
      if (r > 0) ch[w] = r;
    }
    return ch;
  } catch (const std::invalid_argument&) {
    return std::nullopt;  // unsupported fundamental or dimension bound
  }
}

/// [Delta(lambda) : L(mu)] for all mu, when determined.
inline DecompositionResult weyl_comp_factors(const RootDatum& rd,
                                             const Weight& lambda, int p) {
  if (!rd.is_dominant(lambda))
    throw std::invalid_argument("weyl_comp_factors: non-dominant");
  DecompositionResult res;
  res.factors[lambda] = 1;
  if (in_bottom_alcove_closure(rd, lambda, p)) return res;
  const Character js = jantzen_sum(rd, lambda, p);
  if (js.empty()) return res;

  // Layer-weighted multiplicities a_mu = Sum_i i [Delta^i/Delta^{i+1} :
  // L(mu)] by greedy subtraction of simple characters at maximal weights.
  std::map<Weight, long long> layered;
  std::optional<Weight> blocked;
  Character rem = js;
  while (!rem.empty()) {
    auto top = max_dominant_support(rd, rem);
    if (!top)
      throw std::logic_error("weyl_comp_factors: sum without dominant support");
    const long long m = rem[*top];
    if (m <= 0)
      throw std::logic_error("weyl_comp_factors: sum not Weyl-positive");
    auto chL = simple_character(rd, *top, p);
    if (!chL) {
      blocked = *top;
      break;
    }
    layered[*top] = m;
    add_to(rem, *chL, -m);
  }

  bool ambiguous = blocked.has_value();
  if (!blocked) {
    for (const auto& [mu, a] : layered)
      if (a >= 2) ambiguous = true;
  }
  if (!ambiguous) {
    for (const auto& [mu, a] : layered) res.factors[mu] = 1;
    return res;
  }

  // Layered multiplicities a_mu >= 2 leave [Delta : L(mu)] in {1, .., a_mu}.
  // Resolve them from dim L(lambda)_mu, the rank of the contravariant form
  // on the mu block alone: working down the dominance order,
  //   [Delta : L(mu)] = chi(lambda)_mu - dim L(lambda)_mu
  //                     - sum_{tau > mu} [Delta : L(tau)] ch L(tau)_mu.
  if (!blocked) {
    std::vector<Weight> targets;
    for (const auto& [mu, a] : layered)
      if (a >= 2) targets.push_back(mu);
    try {
      const auto ranks = weyl_block_ranks(rd, lambda, p, targets);
      std::vector<Weight> order;
      for (const auto& [mu, a] : layered) order.push_back(mu);
      auto depth = [&](const Weight& mu) {
        auto rc = rd.root_coords(sub(lambda, mu));
        if (!rc) throw std::logic_error("weyl_comp_factors: unlinked weight");
        int h = 0;
        for (int x : *rc) h += x;
        return h;
      };
      std::sort(order.begin(), order.end(), [&](const Weight& x,
                                                const Weight& y) {
        return depth(x) < depth(y);
      });
      const Character chi = weyl_character(rd, lambda);
      std::map<Weight, long long> mult;
      for (const auto& mu : order) {
        const long long a = layered.at(mu);
        if (a == 1) {
          mult[mu] = 1;
          continue;
        }
        long long m = chi.at(mu) - ranks.at(mu);
        for (const auto& [tau, mt] : mult) {
          auto chL = simple_character(rd, tau, p);  // cached from the greedy
          auto it = chL->find(mu);
          if (it != chL->end()) m -= mt * it->second;
        }
        if (m < 1 || m > a)
          throw std::logic_error("weyl_comp_factors: block rank out of range");
        mult[mu] = m;
      }
      for (const auto& [mu, m] : mult) res.factors[mu] = m;
      return res;
    } catch (const std::invalid_argument&) {
      // interval or fundamental out of reach; fall through
    }
  }

  // Fallback: exact ch L(lambda) from the explicit module, then decompose
  // chi(lambda) - ch L(lambda) into simple characters.
  if (auto chL = gram_simple_char(rd, lambda, p)) {
    Character rest = weyl_character(rd, lambda);
    add_to(rest, *chL, -1);
    DecompositionResult out;
    out.factors[lambda] = 1;
    while (!rest.empty()) {
      auto top = max_dominant_support(rd, rest);
      if (!top)
        throw std::logic_error("weyl_comp_factors: residue without support");
      const long long m = rest[*top];
      if (m <= 0)
        throw std::logic_error("weyl_comp_factors: negative multiplicity");
      auto c = simple_character(rd, *top, p);
      if (!c) {
        out.determined = false;
        out.blocking = *top;
        out.undetermined.insert(*top);
        return out;
      }
      out.factors[*top] = m;
      add_to(rest, *c, -m);
    }
    return out;
  }

  // Partial result: a_mu = 1 pins the multiplicity to 1; a_mu >= 2 does not.
  res.determined = false;
  res.blocking = blocked;
  if (blocked) res.undetermined.insert(*blocked);
  for (const auto& [mu, a] : layered) {
    if (a == 1)
      res.factors[mu] = 1;
    else
      res.undetermined.insert(mu);
  }
  return res;
}

/// ch L(lambda); empty optional when the recursion hits an undetermined
/// multiplicity and the form-rank fallback is out of reach.
inline std::optional<Character> simple_character(const RootDatum& rd,
                                                 const Weight& lambda, int p) {
  static std::map<std::string, std::optional<Character>> cache;
  static std::mutex mtx;
  if (!rd.is_dominant(lambda))
    throw std::invalid_argument("simple_character: non-dominant");
  const std::string key = detail::datum_key(rd) + ":p" + std::to_string(p) +
                          ":" + weight_to_string(lambda);
  {
    std::lock_guard<std::mutex> lk(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::optional<Character> out;
  if (!rd.in_X1_prime(lambda, p)) {
    out = steinberg_simple_char(rd, lambda, p, [&](const Weight& digit) {
      return simple_character(rd, digit, p);
    });
  } else {
    auto wcf = weyl_comp_factors(rd, lambda, p);
    if (wcf.determined) {
      Character ch = weyl_character(rd, lambda);
      bool ok = true;
      for (const auto& [mu, m] : wcf.factors) {
        if (mu == lambda) continue;
        auto sub_ch = simple_character(rd, mu, p);
        if (!sub_ch) {
          ok = false;
          break;
        }
        add_to(ch, *sub_ch, -m);
      }
      if (ok) out = std::move(ch);
    }
    if (!out) out = gram_simple_char(rd, lambda, p);
  }
  std::lock_guard<std::mutex> lk(mtx);
  auto [it, inserted] = cache.emplace(key, out);
  return it->second;
}

/// Composition factors of L(lambda) (x) L(mu) by greedy subtraction of
/// simple characters at maximal weights.
inline DecompositionResult simple_tensor_comp_factors(const RootDatum& rd,
                                                      const Weight& lambda,
                                                      const Weight& mu,
                                                      int p) {
  DecompositionResult res;
  auto a = simple_character(rd, lambda, p);
  auto b = simple_character(rd, mu, p);
  if (!a || !b) {
    res.determined = false;
    res.blocking = !a ? lambda : mu;
    res.undetermined.insert(*res.blocking);
    return res;
  }
  Character t = tensor(*a, *b);
  while (!t.empty()) {
    auto top = max_dominant_support(rd, t);
    if (!top)
      throw std::logic_error(
          "simple_tensor_comp_factors: residue without dominant support");
    const long long m = t[*top];
    if (m <= 0)
      throw std::logic_error(
          "simple_tensor_comp_factors: negative multiplicity at " +
          weight_to_string(*top));
    auto c = simple_character(rd, *top, p);
    if (!c) {
      res.determined = false;
      res.blocking = *top;
      res.undetermined.insert(*top);
      return res;
    }
    res.factors[*top] = m;
    add_to(t, *c, -m);
  }
  return res;
}

}  // namespace repcr
