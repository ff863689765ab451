#pragma once

// Complete-reducibility decision layer: type-A partition combinatorics
// (addable/removable/conormal/cogood), per-type classifiers, necessary and
// sufficient rules, and the digit-splitting top-level decider.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "repcr/character.hpp"
#include "repcr/jantzen.hpp"
#include "repcr/rootdatum.hpp"
#include "repcr/steinberg.hpp"
#include "repcr/weakmax.hpp"
#include "repcr/weights.hpp"

namespace repcr {

enum class Verdict { CR, NotCR, Unknown };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::CR: return "CR";
    case Verdict::NotCR: return "NotCR";
    default: return "Unknown";
  }
}

/// Decision with a certificate: the rule that fired and its witness data.
struct CRVerdict {
  Verdict verdict = Verdict::Unknown;
  std::string rule;
  std::string witness;
  /// Simple direct summands with multiplicities, when fully certified.
  std::vector<std::pair<Weight, long long>> summands;

  static CRVerdict cr(std::string r, std::string w = {}) {
    return {Verdict::CR, std::move(r), std::move(w), {}};
  }
  static CRVerdict not_cr(std::string r, std::string w = {}) {
    return {Verdict::NotCR, std::move(r), std::move(w), {}};
  }
  static CRVerdict unknown(std::string r = {}, std::string w = {}) {
    return {Verdict::Unknown, std::move(r), std::move(w), {}};
  }
};

// ---------------------------------------------------------------------------
// Type-A partition combinatorics.

/// Weakly decreasing tuple of n+1 non-negative parts (type A_n context).
struct Partition {
  std::vector<int> parts;

  int size() const { return static_cast<int>(parts.size()); }
  int at(int i /*1-based*/) const { return parts[i - 1]; }
};

/// pi(mu): parts lambda_i = a_i + ... + a_n, lambda_{n+1} = 0, so that
/// lambda_i - lambda_{i+1} = a_i and adding a box in row i realizes
/// mu - omega_{i-1} + omega_i (the weight shift by eps_i of the natural
/// module).
inline Partition pi_of_weight(const Weight& mu) {
  const int n = static_cast<int>(mu.size());
  Partition P;
  P.parts.assign(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    int s = 0;
    for (int j = i; j <= n; ++j) s += mu[j - 1];
    P.parts[i - 1] = s;
  }
  return P;
}

/// Inverse of pi up to the normalization lambda_{n+1} = 0.
inline Weight weight_of_partition(const Partition& P) {
  const int n = P.size() - 1;
  Weight mu(n, 0);
  for (int j = 1; j <= n; ++j) mu[j - 1] = P.at(j) - P.at(j + 1);
  return mu;
}

inline bool is_addable(const Partition& P, int i) {
  if (i < 1 || i > P.size()) throw std::out_of_range("is_addable");
  return i == 1 || P.at(i) < P.at(i - 1);
}

inline bool is_removable(const Partition& P, int i) {
  if (i < 1 || i > P.size()) throw std::out_of_range("is_removable");
  return i == P.size() || P.at(i + 1) < P.at(i);
}

/// Residue of b - a in Z/pZ.
inline int res(int a, int b, int p) {
  int r = (b - a) % p;
  return r < 0 ? r + p : r;
}

inline std::vector<int> M_minus(const Partition& P, int i, int p) {
  std::vector<int> out;
  const int target = res(i, P.at(i) + 1, p);
  for (int j = 1; j < i; ++j)
    if (is_removable(P, j) && res(j, P.at(j), p) == target) out.push_back(j);
  return out;
}

inline std::vector<int> M_plus(const Partition& P, int i, int p) {
  std::vector<int> out;
  const int target = res(i, P.at(i) + 1, p);
  for (int j = 1; j < i; ++j)
    if (is_addable(P, j) && res(j, P.at(j) + 1, p) == target) out.push_back(j);
  return out;
}

/// Existence of an injection phi: minus -> plus with phi(j) > j, decided by
/// greedy matching (each element of minus, in increasing order, takes the
/// least unused strictly larger element of plus).
inline bool has_increasing_injection(const std::vector<int>& minus,
                                     const std::vector<int>& plus) {
  std::vector<bool> used(plus.size(), false);
  for (int j : minus) {
    bool matched = false;
    for (size_t k = 0; k < plus.size(); ++k) {
      if (!used[k] && plus[k] > j) {
        used[k] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

inline bool is_conormal(const Partition& P, int i, int p) {
  return is_addable(P, i) &&
         has_increasing_injection(M_minus(P, i, p), M_plus(P, i, p));
}

inline bool is_cogood(const Partition& P, int i, int p) {
  if (!is_conormal(P, i, p)) return false;
  const int r = res(i, P.at(i) + 1, p);
  for (int j = i + 1; j <= P.size(); ++j)
    if (res(j, P.at(j) + 1, p) == r && is_conormal(P, j, p)) return false;
  return true;
}

inline std::vector<int> conormal_set(const Partition& P, int p) {
  std::vector<int> out;
  for (int i = 1; i <= P.size(); ++i)
    if (is_conormal(P, i, p)) out.push_back(i);
  return out;
}

inline std::vector<int> cogood_set(const Partition& P, int p) {
  std::vector<int> out;
  for (int i = 1; i <= P.size(); ++i)
    if (is_cogood(P, i, p)) out.push_back(i);
  return out;
}

/// (pi(mu) + eps_i)' = mu - omega_{i-1} + omega_i (omega_0 = omega_{n+1} = 0).
inline Weight add_box_weight(const Weight& mu, int i) {
  const int n = static_cast<int>(mu.size());
  Weight w = mu;
  if (i - 1 >= 1 && i - 1 <= n) w[i - 2] -= 1;
  if (i >= 1 && i <= n) w[i - 1] += 1;
  return w;
}

/// Indices i such that Hom(Delta(mu - omega_{i-1} + omega_i), V (x) L(mu))
/// is nonzero (the conormal indices).
inline std::vector<int> hom_weyl_set(const Weight& mu, int p) {
  return conormal_set(pi_of_weight(mu), p);
}

/// Indices with nonzero Hom from the simple module (the cogood indices).
inline std::vector<int> hom_simple_set(const Weight& mu, int p) {
  return cogood_set(pi_of_weight(mu), p);
}

/// Complete reducibility of V (x) L(mu) for the natural module V of A_n:
/// CR iff every conormal index is cogood.
inline CRVerdict natural_tensor_cr(const Weight& mu, int p) {
  const Partition P = pi_of_weight(mu);
  const auto conormal = conormal_set(P, p);
  const auto cogood = cogood_set(P, p);
  for (int i : conormal)
    if (std::find(cogood.begin(), cogood.end(), i) == cogood.end())
      return CRVerdict::not_cr("natural_tensor_cr",
                               "conormal not cogood: " + std::to_string(i));
  CRVerdict v = CRVerdict::cr("natural_tensor_cr");
  for (int i : cogood) v.summands.emplace_back(add_box_weight(mu, i), 1);
  return v;
}

// ---------------------------------------------------------------------------
// Classifiers and rules.

namespace crdetail {

inline bool is_zero(const Weight& w) {
  for (int x : w)
    if (x != 0) return false;
  return true;
}

/// Indices of the fundamental weights in a 2-restricted weight; empty
/// optional when some coordinate exceeds 1.
inline std::optional<std::vector<int>> fundamental_support(const Weight& w) {
  std::vector<int> out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0 || w[i] > 1) return std::nullopt;
    if (w[i] == 1) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

inline bool is_single_fundamental(const Weight& w, int i /*1-based*/) {
  auto s = fundamental_support(w);
  return s && s->size() == 1 && (*s)[0] == i;
}

}  // namespace crdetail

///// Classification for A_n, p=2, both weights 2-restricted: the four CR
/// shapes (up to swapping), plus the trivial cases.
inline CRVerdict an_p2_classifier(const RootDatum& rd, const Weight& lambda,
                                  const Weight& mu) {
  if (rd.type_letter != 'A')
    throw std::invalid_argument("an_p2_classifier: type A only");
  const int n = rd.rank;
  auto sl = crdetail::fundamental_support(lambda);
  auto sm = crdetail::fundamental_support(mu);
  if (!sl || !sm)
    throw std::invalid_argument("an_p2_classifier: non-2-restricted weight");
  if (sl->empty() || sm->empty()) return CRVerdict::cr("trivial");

  auto matches = [&](const std::vector<int>& a,
                     const std::vector<int>& b) -> std::optional<std::string> {
    // (1) lambda = omega_1, mu with all indices even and > 1.
    if (a.size() == 1 && a[0] == 1) {
      bool ok = true;
      for (int i : b)
        if (i % 2 != 0 || i <= 1) ok = false;
      if (ok) return std::string("case1");
    }
    // (2) lambda = omega_n, mu with n+1-i even and i < n for all indices.
    if (a.size() == 1 && a[0] == n) {
      bool ok = true;
      for (int i : b)
        if ((n + 1 - i) % 2 != 0 || i >= n) ok = false;
      if (ok) return std::string("case2");
    }
    // (3) lambda = omega_2, mu = omega_j, 2 < j <= n, j-2 = 3 mod 4.
    if (a.size() == 1 && a[0] == 2 && b.size() == 1) {
      const int j = b[0];
      if (j > 2 && (j - 2) % 4 == 3) return std::string("case3");
    }
    // (4) lambda = omega_{n-1}, mu = omega_j, j < n-1, n-1-j = 3 mod 4.
    if (a.size() == 1 && a[0] == n - 1 && b.size() == 1) {
      const int j = b[0];
      if (j < n - 1 && (n - 1 - j) % 4 == 3) return std::string("case4");
    }
    return std::nullopt;
  };

  if (auto c = matches(*sl, *sm)) return CRVerdict::cr("an_p2_classifier:" + *c);
  if (auto c = matches(*sm, *sl)) return CRVerdict::cr("an_p2_classifier:" + *c);
  return CRVerdict::not_cr("an_p2_classifier", "no CR shape applies");
}

/// Necessary condition: lambda + mu must be p-restricted.
inline CRVerdict necessary_sum_restricted(const RootDatum& rd,
                                          const Weight& lambda,
                                          const Weight& mu, int p) {
  const Weight s = add(lambda, mu);
  if (!rd.is_p_restricted(s, p))
    return CRVerdict::not_cr("sum_not_restricted", weight_to_string(s));
  return CRVerdict::unknown();
}

/// NotCR when a composition factor of highest weight p*delta (delta != 0)
/// exists: a twisted simple factor obstructs restricted semisimplicity.
inline CRVerdict frobenius_factor_obstruction(const RootDatum& rd,
                                              const Weight& lambda,
                                              const Weight& mu, int p) {
  auto dec = simple_tensor_comp_factors(rd, lambda, mu, p);
  for (const auto& [w, m] : dec.factors) {
    if (crdetail::is_zero(w)) continue;
    bool divisible = true;
    for (int x : w)
      if (x % p != 0) divisible = false;
    if (divisible) {
      Weight delta(w.size());
      for (size_t i = 0; i < w.size(); ++i) delta[i] = w[i] / p;
      return CRVerdict::not_cr("frobenius_factor", weight_to_string(delta));
    }
  }
  return CRVerdict::unknown(dec.determined ? "" : "factors_undetermined");
}

/// CR when the tensor product is multiplicity free.
inline CRVerdict multiplicity_free_test(const RootDatum& rd,
                                        const Weight& lambda, const Weight& mu,
                                        int p) {
  auto dec = simple_tensor_comp_factors(rd, lambda, mu, p);
  if (!dec.determined) return CRVerdict::unknown("factors_undetermined");
  for (const auto& [w, m] : dec.factors)
    if (m > 1) return CRVerdict::unknown("multiplicity_above_one");
  CRVerdict v = CRVerdict::cr("multiplicity_free");
  for (const auto& [w, m] : dec.factors) v.summands.emplace_back(w, m);
  return v;
}

/// Contrapositive splitting propagation: when p does not divide dim V and W
/// is not completely reducible, neither is V (x) W.
inline CRVerdict serre_propagation(long long dim_V, const CRVerdict& verdict_W,
                                   int p) {
  if (dim_V == 1) return verdict_W;  // V (x) W = W
  if (dim_V % p == 0) return CRVerdict::unknown("serre_inapplicable");
  if (verdict_W.verdict == Verdict::NotCR)
    return CRVerdict::not_cr("serre:" + verdict_W.rule, verdict_W.witness);
  return CRVerdict::unknown();
}

/// NotCR when lambda+mu fails restrictedness at the restricted level only.
inline CRVerdict g2_inequalities(const RootDatum& rd, const Weight& lambda,
                                 const Weight& mu, int p) {
  if (rd.type_letter != 'G' || p <= 3)
    throw std::invalid_argument("g2_inequalities: G_2 with p>3 only");
  const int a = lambda[0], b = lambda[1], c = mu[0], d = mu[1];
  if (a + c + 3 * std::min(b, d) >= p)
    return CRVerdict::not_cr("g2_inequality_short",
                             std::to_string(a + c + 3 * std::min(b, d)));
  if (b + d + std::min(a, c) >= p)
    return CRVerdict::not_cr("g2_inequality_long",
                             std::to_string(b + d + std::min(a, c)));
  return CRVerdict::unknown();
}

inline CRVerdict smallprime_classifier(const RootDatum& rd,
                                       const Weight& lambda, const Weight& mu,
                                       int p);

/// One-directional propagation: truncation to the Levi subgroup of a
/// connected index set preserves complete reducibility.
inline CRVerdict levi_propagation(const RootDatum& rd, const Weight& lambda,
                                  const Weight& mu, const std::vector<int>& I,
                                  int p) {
  LeviTruncation lt;
  try {
    lt = levi_truncate(rd, I);
  } catch (const std::invalid_argument&) {
    return CRVerdict::unknown("levi_unrecognized");
  }
  const Weight lI = lt.map_weight(lambda), mI = lt.map_weight(mu);
  if (crdetail::is_zero(lI) || crdetail::is_zero(mI))
    return CRVerdict::unknown();
  CRVerdict sub = CRVerdict::unknown();
  if (lt.datum.type_letter == 'A' && p == 2) {
    sub = an_p2_classifier(lt.datum, lI, mI);
  } else if ((p == 2 && (lt.datum.type_letter == 'C' && lt.datum.rank == 3)) ||
             (p == 2 && lt.datum.type_letter == 'G') ||
             (p == 3 && lt.datum.type_letter == 'G') ||
             (p == 2 && lt.datum.type_letter == 'B')) {
    sub = smallprime_classifier(lt.datum, lI, mI, p);
  } else if (lt.datum.type_letter == 'G' && p > 3) {
    sub = g2_inequalities(lt.datum, lI, mI, p);
  }
  if (sub.verdict == Verdict::NotCR) {
    std::string iv;
    for (int i : I) iv += (iv.empty() ? "" : ",") + std::to_string(i);
    return CRVerdict::not_cr("levi[" + iv + "]:" + sub.rule, sub.witness);
  }
  return CRVerdict::unknown();
}

namespace crdetail {

/// B_n, p=2: the case analysis of the small-primes argument; Unknown outside
/// its reach.
inline CRVerdict bn_p2_chain(const RootDatum& rd, const Weight& lambda,
                             const Weight& mu) {
  const int n = rd.rank;
  const int p = 2;
  if (is_zero(lambda) || is_zero(mu)) return CRVerdict::cr("trivial");
  auto nec = necessary_sum_restricted(rd, lambda, mu, p);
  if (nec.verdict == Verdict::NotCR) return nec;
  // lambda = lambda' + eps_lambda * omega_n with lambda' supported on the
  // long simple roots; eps_lambda + eps_mu <= 1 since lambda + mu is
  // restricted.
  auto [lp, ls] = rd.long_short_split(lambda);
  auto [mp_, ms] = rd.long_short_split(mu);
  const int eps = ls[n - 1] + ms[n - 1];
  if (is_zero(lp) || is_zero(mp_)) {
    CRVerdict v = CRVerdict::cr("refined_split_simple");
    v.summands.emplace_back(add(lambda, mu), 1);
    return v;
  }
  // Truncate the long parts to the A_{n-1} Levi.
  auto A = build_root_datum('A', n - 1);
  Weight lA(n - 1), mA(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    lA[i] = lp[i];
    mA[i] = mp_[i];
  }
  auto cls = an_p2_classifier(A, lA, mA);
  if (cls.verdict == Verdict::NotCR)
    return CRVerdict::not_cr("bn_p2:levi_a_classifier", cls.witness);
  // CR shape on the Levi: one side is a single fundamental with index in
  // {1, 2, n-2, n-1}; run the four-case analysis.
  auto check = [&](const Weight& a, const Weight& b) -> CRVerdict {
    if (is_single_fundamental(a, n - 1))
      return CRVerdict::not_cr(
          "bn_p2:omega_n-1",
          "factor " + std::to_string(2 + eps) + "*omega_n");
    if (is_single_fundamental(a, n - 2)) {
      if (is_single_fundamental(b, 2))
        return CRVerdict::not_cr(
            "bn_p2:omega_2_omega_n-2",
            "factor " + std::to_string(2 + eps) + "*omega_n");
      if (!is_single_fundamental(b, 1))
        return CRVerdict::not_cr(
            "bn_p2:omega_n-2",
            "factor " + std::to_string(2 + eps) + "*omega_n");
    }
    return CRVerdict::unknown();
  };
  // These weights are the long parts (coordinates 1..n-1 of B_n).
  CRVerdict r1 = check(lp, mp_);
  if (r1.verdict != Verdict::Unknown) return r1;
  CRVerdict r2 = check(mp_, lp);
  if (r2.verdict != Verdict::Unknown) return r2;
  return CRVerdict::unknown("bn_p2:outside_proof");
}

}  // namespace crdetail

///// Classifications and proof chains for the small-prime families:
/// (C_3, 2), (F_4, 2), (G_2, 3) are complete (long/short shape), (G_2, 2)
/// is complete (trivial pairs only), (B_n, 2) runs the case analysis.
inline CRVerdict smallprime_classifier(const RootDatum& rd,
                                       const Weight& lambda, const Weight& mu,
                                       int p) {
  const char t = rd.type_letter;
  if (!rd.is_p_restricted(lambda, p) || !rd.is_p_restricted(mu, p))
    throw std::invalid_argument("smallprime_classifier: non-restricted");
  if (crdetail::is_zero(lambda) || crdetail::is_zero(mu))
    return CRVerdict::cr("trivial");
  if ((t == 'C' && rd.rank == 3 && p == 2) || (t == 'F' && p == 2) ||
      (t == 'G' && p == 3)) {
    auto [ll, ls] = rd.long_short_split(lambda);
    auto [ml, ms] = rd.long_short_split(mu);
    const bool shape = (crdetail::is_zero(ls) && crdetail::is_zero(ml)) ||
                       (crdetail::is_zero(ll) && crdetail::is_zero(ms));
    if (shape) {
      CRVerdict v = CRVerdict::cr("refined_split_simple");
      v.summands.emplace_back(add(lambda, mu), 1);
      return v;
    }
    return CRVerdict::not_cr("smallprime_classifier",
                             "no long/short split shape");
  }
  if (t == 'G' && p == 2) {
    // X_1 \ {0} = {w1, w2, w1+w2}; the only pair with restricted sum is
    // {w1, w2}, which has the twisted factor L(2*w1).
    auto nec = necessary_sum_restricted(rd, lambda, mu, p);
    if (nec.verdict == Verdict::NotCR) return nec;
    return CRVerdict::not_cr("frobenius_factor", weight_to_string({1, 0}));
  }
  if (t == 'B' && p == 2) return crdetail::bn_p2_chain(rd, lambda, mu);
  throw std::invalid_argument("smallprime_classifier: unhandled (type, p)");
}

// ---------------------------------------------------------------------------
// Top-level decider.

struct DecideOptions {
  bool use_oracle = false;  // run the explicit-module oracle when within cap
  bool use_levi = true;
  bool use_jantzen = true;  // factor-based rules (frobenius, mult-free)
};

/// Verdict for a pair of p-restricted weights (one digit of the reduction).
inline CRVerdict restricted_verdict(const RootDatum& rd, const Weight& lambda,
                                    const Weight& mu, int p,
                                    const DecideOptions& opts = {}) {
  if (!rd.is_p_restricted(lambda, p) || !rd.is_p_restricted(mu, p))
    throw std::invalid_argument("restricted_verdict: non-restricted digit");
  if (crdetail::is_zero(lambda) || crdetail::is_zero(mu))
    return CRVerdict::cr("trivial");
  const char t = rd.type_letter;

  // Complete classifiers first.
  if (t == 'A' && p == 2) return an_p2_classifier(rd, lambda, mu);
  if ((t == 'C' && rd.rank == 3 && p == 2) || (t == 'F' && p == 2) ||
      (t == 'G' && p == 3) || (t == 'G' && p == 2) || (t == 'B' && p == 2)) {
    auto v = smallprime_classifier(rd, lambda, mu, p);
    if (v.verdict != Verdict::Unknown) return v;
  }
  if (t == 'G' && p > 3) {
    auto v = g2_inequalities(rd, lambda, mu, p);
    if (v.verdict != Verdict::Unknown) return v;
  }

  // Necessary rules.
  auto nec = necessary_sum_restricted(rd, lambda, mu, p);
  if (nec.verdict != Verdict::Unknown) return nec;
  if (opts.use_jantzen) {
    auto frob = frobenius_factor_obstruction(rd, lambda, mu, p);
    if (frob.verdict != Verdict::Unknown) return frob;
    auto mf = multiplicity_free_test(rd, lambda, mu, p);
    if (mf.verdict != Verdict::Unknown) return mf;
  }

  // Levi truncations over contiguous intervals.
  if (opts.use_levi) {
    for (int a = 1; a <= rd.rank; ++a)
      for (int b = a; b <= rd.rank; ++b) {
        if (a == 1 && b == rd.rank) continue;
        std::vector<int> I;
        for (int i = a; i <= b; ++i) I.push_back(i);
        auto v = levi_propagation(rd, lambda, mu, I, p);
        if (v.verdict == Verdict::NotCR) return v;
      }
  }

  // Ground-truth oracle within the dimension cap.
  if (opts.use_oracle) {
    try {
      auto A = simple_module(rd, lambda, p);
      auto B = simple_module(rd, mu, p);
      if (static_cast<long long>(A->dim) * B->dim <= weakmax_dim_cap()) {
        auto V = tensor_modules(*A, *B);
        return is_cr_g(V) ? CRVerdict::cr("oracle")
                          : CRVerdict::not_cr("oracle");
      }
    } catch (const std::invalid_argument&) {
      // dimension bound or unsupported construction: fall through
    }
  }
  return CRVerdict::unknown("no_rule_applies");
}

struct DigitTrace {
  Weight lambda0, mu0;
  CRVerdict verdict;
};

struct CRDecision {
  CRVerdict overall;
  std::vector<DigitTrace> digits;
};

/// Reduction-theorem decider: digit split, per-digit rule chain, conjunction.
inline CRDecision decide_cr(const RootDatum& rd, const Weight& lambda,
                            const Weight& mu, int p,
                            const DecideOptions& opts = {}) {
  if (!rd.is_dominant(lambda) || !rd.is_dominant(mu))
    throw std::invalid_argument("decide_cr: non-dominant");
  auto dl = p_digits(lambda, p);
  auto dm = p_digits(mu, p);
  const size_t len = std::max(dl.digits.size(), dm.digits.size());
  while (dl.digits.size() < len) dl.digits.push_back(zero_weight(rd.rank));
  while (dm.digits.size() < len) dm.digits.push_back(zero_weight(rd.rank));

  CRDecision out;
  bool all_cr = true, any_not = false, all_summands = true;
  for (size_t i = 0; i < len; ++i) {
    DigitTrace tr;
    tr.lambda0 = dl.digits[i];
    tr.mu0 = dm.digits[i];
    tr.verdict = restricted_verdict(rd, tr.lambda0, tr.mu0, p, opts);
    if (tr.verdict.verdict != Verdict::CR) all_cr = false;
    if (tr.verdict.verdict == Verdict::NotCR) any_not = true;
    if (tr.verdict.verdict == Verdict::CR && tr.verdict.summands.empty() &&
        !(crdetail::is_zero(tr.lambda0) && crdetail::is_zero(tr.mu0)))
      all_summands = false;
    out.digits.push_back(std::move(tr));
  }

  if (any_not) {
    for (const auto& tr : out.digits)
      if (tr.verdict.verdict == Verdict::NotCR) {
        out.overall = tr.verdict;
        break;
      }
  } else if (all_cr) {
    out.overall = CRVerdict::cr("digit_conjunction");
    if (all_summands) {
      // Assemble summands across digits: cross products of the per-digit
      // summands, each combination reassembled from its digits.  Valid only
      // when every contributing digit summand is p-restricted.
      std::vector<std::pair<Weight, long long>> acc{{zero_weight(rd.rank), 1}};
      bool valid = true;
      long long scale_factor = 1;
      for (const auto& tr : out.digits) {
        std::vector<std::pair<Weight, long long>> digit_sums;
        if (crdetail::is_zero(tr.lambda0) && crdetail::is_zero(tr.mu0))
          digit_sums.emplace_back(zero_weight(rd.rank), 1);
        else
          digit_sums = tr.verdict.summands;
        for (const auto& [w, m] : digit_sums)
          if (!rd.is_p_restricted(w, p)) valid = false;
        if (!valid) break;
        std::vector<std::pair<Weight, long long>> next;
        for (const auto& [wa, ma] : acc)
          for (const auto& [wb, mb] : digit_sums)
            next.emplace_back(add(wa, scale(static_cast<int>(scale_factor), wb)),
                              ma * mb);
        acc = std::move(next);
        scale_factor *= p;
      }
      if (valid) out.overall.summands = std::move(acc);
    }
  } else {
    out.overall = CRVerdict::unknown("digit_unknown");
  }
  return out;
}

}  // namespace repcr
