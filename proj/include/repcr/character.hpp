#pragma once

// Exact characters: Freudenthal recursion, the alternating Weyl-sum oracle,
// tensor convolution, Frobenius twist and greedy decomposition into Weyl
// characters (good-filtration multiplicities).

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "repcr/rootdatum.hpp"
#include "repcr/weights.hpp"

namespace repcr {

/// Finite map weight -> multiplicity with Weyl-symmetric support.
using Character = std::map<Weight, long long>;

inline long long mass(const Character& ch) {
  long long m = 0;
  for (auto& [w, c] : ch) m += c;
  return m;
}

inline void add_to(Character& a, const Character& b, long long scale = 1) {
  for (auto& [w, c] : b) {
    auto it = a.emplace(w, 0).first;
    it->second += scale * c;
    if (it->second == 0) a.erase(it);
  }
}

inline Character tensor(const Character& a, const Character& b) {
  Character out;
  for (auto& [wa, ca] : a)
    for (auto& [wb, cb] : b) {
      auto it = out.emplace(add(wa, wb), 0).first;
      it->second += ca * cb;
      if (it->second == 0) out.erase(it);
    }
  return out;
}

inline Character frobenius_twist(const Character& a, int p) {
  Character out;
  for (auto& [w, c] : a) out[scale(p, w)] = c;
  return out;
}

namespace detail {

inline std::string datum_key(const RootDatum& rd) {
  return std::string(1, rd.type_letter) + std::to_string(rd.rank);
}

/// det * (x, y) where y is given in simple-root coordinates (exact integer).
inline long long ip_weight_root(const RootDatum& rd, const Weight& x,
                                const RootVec& a) {
  long long s = 0;
  for (int j = 0; j < rd.rank; ++j)
    s += static_cast<long long>(a[j]) * rd.d[j] * x[j];
  return s;  // (x, alpha) is already integral; no det factor needed
}

}  // namespace detail

/// det(C) * (x, x) for a weight x in fundamental coordinates (exact integer).
inline long long scaled_self_ip(const RootDatum& rd, const Weight& x) {
  // x = sum_j c_j alpha_j with c = adj(C) x / det; then (x,x) = sum c_j d_j x_j.
  const auto& adj = rd.cartan_adjugate();
  long long s = 0;
  for (int j = 0; j < rd.rank; ++j) {
    long long cj = 0;
    for (int k = 0; k < rd.rank; ++k) cj += adj[j][k] * x[k];
    s += cj * rd.d[j] * x[j];
  }
  return s;  // equals det * (x,x)
}

/// Weyl dimension formula (exact; big-integer intermediates).
inline long long weyl_dim(const RootDatum& rd, const Weight& lambda) {
  if (!rd.is_dominant(lambda)) throw std::invalid_argument("weyl_dim: non-dominant");
  namespace mp = boost::multiprecision;
  mp::cpp_int num = 1, den = 1;
  Weight lr = add(lambda, rd.rho);
  for (const auto& a : rd.positive_roots) {
    num *= rd.pairing(lr, a);
    den *= rd.pairing(rd.rho, a);
  }
  mp::cpp_int q = num / den;
  if (num != q * den) throw std::logic_error("weyl_dim: non-integral");
  return q.convert_to<long long>();
}

/// chi(lambda) via Freudenthal's recursion (memoized globally).
inline Character weyl_character(const RootDatum& rd, const Weight& lambda) {
  static std::map<std::string, Character> cache;
  static std::mutex mtx;
  const std::string key = detail::datum_key(rd) + ":" + weight_to_string(lambda);
  {
    std::lock_guard<std::mutex> lk(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  if (!rd.is_dominant(lambda))
    throw std::invalid_argument("weyl_character: non-dominant");

  auto dom = rd.dominant_weights_below(lambda);
  // Process from lambda downward: order by height of (lambda - mu).
  auto height = [&](const Weight& mu) {
    auto c = rd.root_coords(sub(lambda, mu));
    int h = 0;
    for (int x : *c) h += x;
    return h;
  };
  std::sort(dom.begin(), dom.end(), [&](const Weight& a, const Weight& b) {
    int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });

  std::map<Weight, long long> mult;  // dominant multiplicities
  const long long top = scaled_self_ip(rd, add(lambda, rd.rho));
  const long long lam2 = scaled_self_ip(rd, lambda);
  for (const auto& mu : dom) {
    if (mu == lambda) {
      mult[mu] = 1;
      continue;
    }
    // det*(lambda+rho,lambda+rho) - det*(mu+rho,mu+rho)
    const long long denom = top - scaled_self_ip(rd, add(mu, rd.rho));
    long long acc = 0;
    for (const auto& a : rd.positive_roots) {
      Weight aw = rd.root_to_weight(a);
      Weight nu = mu;
      for (;;) {
        nu = add(nu, aw);
        // (mu+k*alpha, mu+k*alpha) is increasing in k for dominant mu, and
        // every weight of V(lambda) satisfies (nu,nu) <= (lambda,lambda).
        if (scaled_self_ip(rd, nu) > lam2) break;
        Weight dc = rd.dominant_conjugate(nu);
        auto it = mult.find(dc);
        if (it != mult.end() && it->second != 0)
          acc += it->second * detail::ip_weight_root(rd, nu, a);
      }
    }
    // denom carries one factor det(C); scale the root-side sum to match.
    const long long num = 2 * rd.cartan_det() * acc;
    if (denom == 0 || num % denom != 0)
      throw std::logic_error("freudenthal: non-integral multiplicity");
    mult[mu] = num / denom;
  }

  Character out;
  for (auto& [mu, m] : mult) {
    if (m == 0) continue;
    for (const auto& w : rd.weyl_orbit(mu)) out[w] = m;
  }
  std::lock_guard<std::mutex> lk(mtx);
  cache.emplace(key, out);
  return out;
}

// ---------------------------------------------------------------------------
// Alternating Weyl-sum oracle (independent algorithm for cross-checking).

namespace detail {

struct WeylElement {
  std::vector<std::vector<int>> mat;  // action on fundamental coordinates
  int sign;
};

inline std::vector<WeylElement> enumerate_weyl_group(const RootDatum& rd) {
  const int n = rd.rank;
  std::vector<std::vector<std::vector<int>>> gens;
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<int>> s(n, std::vector<int>(n, 0));
    for (int k = 0; k < n; ++k) s[k][k] = 1;
    for (int k = 0; k < n; ++k) s[k][i] -= rd.cartan[k][i];
    gens.push_back(s);
  }
  std::set<std::vector<std::vector<int>>> seen;
  std::vector<WeylElement> out;
  std::vector<std::vector<int>> id(n, std::vector<int>(n, 0));
  for (int k = 0; k < n; ++k) id[k][k] = 1;
  out.push_back({id, 1});
  seen.insert(id);
  for (size_t q = 0; q < out.size(); ++q) {
    auto cur = out[q];
    for (const auto& g : gens) {
      std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) m[i][j] += g[i][k] * cur.mat[k][j];
      if (seen.insert(m).second) out.push_back({m, -cur.sign});
    }
  }
  return out;
}

/// Kostant partition function with memoization (root coordinates).
class KostantPartition {
 public:
  explicit KostantPartition(const RootDatum& rd) : rd_(rd) {}

  long long count(const RootVec& v) {
    for (int x : v)
      if (x < 0) return 0;
    return rec(static_cast<int>(rd_.positive_roots.size()) - 1, v);
  }

 private:
  long long rec(int idx, const RootVec& v) {
    bool zero = true;
    for (int x : v)
      if (x != 0) zero = false;
    if (zero) return 1;
    if (idx < 0) return 0;
    auto key = std::make_pair(idx, v);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    long long total = 0;
    RootVec w = v;
    const RootVec& a = rd_.positive_roots[idx];
    for (;;) {
      total += rec(idx - 1, w);
      bool ok = true;
      for (int i = 0; i < rd_.rank; ++i) {
        w[i] -= a[i];
        if (w[i] < 0) ok = false;
      }
      if (!ok) break;
    }
    memo_[key] = total;
    return total;
  }

  const RootDatum& rd_;
  std::map<std::pair<int, RootVec>, long long> memo_;
};

}  // namespace detail

/// Dominant multiplicities of chi(lambda) via Kostant's alternating sum
/// over the full Weyl group.  Exponential in rank; used as a test oracle.
inline std::map<Weight, long long> weyl_character_alternating_dominant(
    const RootDatum& rd, const Weight& lambda) {
  auto W = detail::enumerate_weyl_group(rd);
  detail::KostantPartition P(rd);
  const Weight lr = add(lambda, rd.rho);
  std::map<Weight, long long> out;
  for (const auto& mu : rd.dominant_weights_below(lambda)) {
    const Weight mr = add(mu, rd.rho);
    long long m = 0;
    for (const auto& w : W) {
      Weight img(rd.rank, 0);
      for (int i = 0; i < rd.rank; ++i)
        for (int j = 0; j < rd.rank; ++j) img[i] += w.mat[i][j] * lr[j];
      auto c = rd.root_coords(sub(img, mr));
      if (!c) continue;
      m += w.sign * P.count(*c);
    }
    if (m != 0) out[mu] = m;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition into Weyl characters.

/// Dominance-maximal dominant support weight, lex tie-break (largest).
inline std::optional<Weight> max_dominant_support(const RootDatum& rd,
                                                  const Character& ch) {
  std::vector<Weight> dom;
  for (auto& [w, c] : ch)
    if (c != 0 && rd.is_dominant(w)) dom.push_back(w);
  if (dom.empty()) return std::nullopt;
  std::vector<Weight> maximal;
  for (const auto& w : dom) {
    bool top = true;
    for (const auto& v : dom)
      if (v != w && rd.dominance_leq(w, v)) {
        top = false;
        break;
      }
    if (top) maximal.push_back(w);
  }
  return *std::max_element(maximal.begin(), maximal.end());
}

/// Greedy subtraction of Weyl characters at maximal dominant weights.
/// Throws if the input is not Weyl-positive.
inline std::map<Weight, long long> decompose_into_weyl(const RootDatum& rd,
                                                       Character ch) {
  std::map<Weight, long long> out;
  while (true) {
    auto top = max_dominant_support(rd, ch);
    if (!top) {
      if (!ch.empty())
        throw std::logic_error("decompose_into_weyl: residue without dominant support");
      return out;
    }
    long long m = ch[*top];
    if (m < 0)
      throw std::logic_error("decompose_into_weyl: negative multiplicity at " +
                             weight_to_string(*top));
    out[*top] = m;
    add_to(ch, weyl_character(rd, *top), -m);
  }
}

/// Good-filtration multiplicities of chi(lambda) * chi(mu).
inline std::map<Weight, long long> gf_mults(const RootDatum& rd,
                                            const Weight& lambda,
                                            const Weight& mu) {
  return decompose_into_weyl(
      rd, tensor(weyl_character(rd, lambda), weyl_character(rd, mu)));
}

}  // namespace repcr
