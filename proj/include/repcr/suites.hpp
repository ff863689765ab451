#pragma once

// Reproduction suites: the named check sets behind the `reproduce` command,
// the acceptance gate and the suite tests.  Each check produces an expected
// and an actual string plus a pass flag; suites aggregate checks and record
// which decision rules fired.

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "repcr/character.hpp"
#include "repcr/crtools.hpp"
#include "repcr/jantzen.hpp"
#include "repcr/rootdatum.hpp"
#include "repcr/steinberg.hpp"
#include "repcr/weakmax.hpp"
#include "repcr/weights.hpp"

namespace repcr {
namespace suites {

struct CheckResult {
  std::string id;
  std::string suite;
  int criterion = 0;  // acceptance criterion number, 0 for suite-only checks
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double wall_seconds = 0.0;
  std::map<std::string, long long> rule_counts;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct CheckDef {
  std::string id;
  std::string suite;
  int criterion = 0;
  std::string expected;
  std::function<std::pair<std::string, bool>()> run;
};

// ---------------------------------------------------------------------------
// Rule-firing counters (coverage bookkeeping for `reproduce all`).

inline std::mutex& rule_mutex() {
  static std::mutex m;
  return m;
}

inline std::map<std::string, long long>& rule_counter() {
  static std::map<std::string, long long> counts;
  return counts;
}

/// Normalizes a certificate rule id to its family name.
inline std::string rule_family(const std::string& rule) {
  std::string base = rule.substr(0, rule.find_first_of(":["));
  if (base.rfind("g2_inequality", 0) == 0) return "g2_inequality";
  if (base.rfind("bn_p2", 0) == 0) return "bn_p2";
  return base;
}

inline void count_rule(const std::string& rule) {
  if (rule.empty()) return;
  std::lock_guard<std::mutex> lk(rule_mutex());
  ++rule_counter()[rule_family(rule)];
}

inline void count_verdict(const CRVerdict& v) { count_rule(v.rule); }

inline void count_decision(const CRDecision& d) {
  count_rule(d.overall.rule);
  for (const auto& tr : d.digits) count_rule(tr.verdict.rule);
}

// ---------------------------------------------------------------------------
// Small helpers shared by checks.

namespace sdetail {

inline std::string yn(bool b) { return b ? "yes" : "no"; }

inline std::pair<std::string, bool> ok_or(const std::string& failures,
                                          const std::string& ok_msg) {
  if (failures.empty()) return {ok_msg, true};
  return {failures, false};
}

/// dim L(lambda) from the character engine; -1 when undetermined.
inline long long dim_simple(const RootDatum& rd, const Weight& lambda, int p) {
  auto ch = simple_character(rd, lambda, p);
  if (!ch) return -1;
  return mass(*ch);
}

/// All p-restricted weights of a datum (coordinate box).
inline std::vector<Weight> restricted_weights(const RootDatum& rd, int p) {
  std::vector<Weight> out;
  Weight w(rd.rank, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == rd.rank) {
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

/// Projective points of F_p^d (leading nonzero coordinate normalized to 1),
/// expressed in the given basis.
inline std::vector<FpVec> projective_points(const std::vector<FpVec>& basis,
                                            int p) {
  std::vector<FpVec> out;
  const size_t d = basis.size();
  if (d == 0) return out;
  const int dim = static_cast<int>(basis[0].size());
  std::vector<int> coeff(d, 0);
  for (size_t lead = 0; lead < d; ++lead) {
    std::fill(coeff.begin(), coeff.end(), 0);
    coeff[lead] = 1;
    bool more = true;
    while (more) {
      FpVec v(dim, 0);
      for (size_t k = 0; k < d; ++k) {
        if (coeff[k] == 0) continue;
        for (int c = 0; c < dim; ++c)
          v[c] = fp_norm(v[c] + 1LL * coeff[k] * basis[k][c], p);
      }
      out.push_back(std::move(v));
      // Increment the tail after the leading 1.
      more = false;
      for (size_t k = d; k-- > lead + 1;) {
        if (coeff[k] + 1 < p) {
          ++coeff[k];
          std::fill(coeff.begin() + k + 1, coeff.end(), 0);
          more = true;
          break;
        }
        coeff[k] = 0;
      }
    }
  }
  return out;
}

inline const char* an_closed_form_name = "all support indices even";

/// Closed-form criterion for V (x) L(mu) at p=2 in type A: CR iff the
/// fundamental support of mu consists of even indices only.
inline bool an_closed_form_cr(const Weight& mu) {
  for (size_t i = 0; i < mu.size(); ++i)
    if (mu[i] != 0 && (i + 1) % 2 != 0) return false;
  return true;
}

}  // namespace sdetail

// ---------------------------------------------------------------------------
// Weakmax sweep (shared by criteria 8, 9 and 10).

struct SweepOutcome {
  long long pairs_an = 0;    // type-A p=2 pairs checked against the classifier
  long long pairs_all = 0;   // all pairs in the sweep
  std::vector<std::string> crit8_failures;
  std::vector<std::string> crit9_failures;
  std::vector<std::string> crit10_failures;
};

namespace sdetail {

inline void sweep_pair(const RootDatum& rd, int p, const Weight& lambda,
                       const Weight& mu, SweepOutcome& out) {
  auto A = simple_module(rd, lambda, p);
  auto B = simple_module(rd, mu, p);
  if (static_cast<long long>(A->dim) * B->dim > weakmax_dim_cap()) return;
  auto V = tensor_modules(*A, *B);
  const std::string tag = detail::datum_key(rd) + " p" + std::to_string(p) +
                          " (" + weight_to_string(lambda) + ")x(" +
                          weight_to_string(mu) + ")";
  ++out.pairs_all;
  const bool g = is_cr_g(V);
  const bool g1 = is_cr_g1(V);

  // Criterion 8: classifier vs oracle (type A, p = 2 only).
  if (rd.type_letter == 'A' && p == 2) {
    ++out.pairs_an;
    const bool cls =
        an_p2_classifier(rd, lambda, mu).verdict == Verdict::CR;
    if (cls != g)
      out.crit8_failures.push_back(tag + ": classifier=" + yn(cls) +
                                   " oracle=" + yn(g));
  }

  // Criterion 9: G-CR iff G_1-CR; G-CR implies restricted maximal weights.
  if (g != g1)
    out.crit9_failures.push_back(tag + ": is_cr_g=" + yn(g) +
                                 " is_cr_g1=" + yn(g1));
  std::set<Weight> support(V.weights.begin(), V.weights.end());
  if (g) {
    for (const auto& delta : support) {
      if (!rd.is_dominant(delta)) continue;
      if (!maximal_vectors(V, delta).empty() &&
          !rd.is_p_restricted(delta, p))
        out.crit9_failures.push_back(tag + ": CR but maximal weight " +
                                     weight_to_string(delta) +
                                     " not restricted");
    }
  }

  // Criterion 10: raising step, component lemma, non-restricted-sum
  // highest-vector criterion.
  const Weight top = add(lambda, mu);
  for (const auto& delta : support) {
    auto wmb = weakly_maximal_vectors(V, delta);
    if (wmb.empty()) continue;
    for (const auto& v : projective_points(wmb, p)) {
      if (delta != top) {
        auto step = raise_weakly_maximal(*A, *B, v);
        if (!step) {
          out.crit10_failures.push_back(tag + ": no raising step at " +
                                        weight_to_string(delta));
          continue;
        }
        if (!is_weakly_maximal(V, step->second))
          out.crit10_failures.push_back(tag + ": raised vector at " +
                                        weight_to_string(delta) +
                                        " not weakly maximal");
      }
      // Component lemma: nonzero projections to L(lambda)_lambda (x)
      // L(mu)_{delta-lambda} and L(lambda)_{delta-mu} (x) L(mu)_mu.
      const Weight dl = sub(delta, lambda), dm = sub(delta, mu);
      bool left = false, right = false;
      for (int a = 0; a < A->dim; ++a)
        for (int b = 0; b < B->dim; ++b) {
          if (v[a * B->dim + b] == 0) continue;
          if (A->weights[a] == lambda && B->weights[b] == dl) left = true;
          if (A->weights[a] == dm && B->weights[b] == mu) right = true;
        }
      if (!left || !right)
        out.crit10_failures.push_back(tag + ": component lemma fails at " +
                                      weight_to_string(delta));
    }
  }
  if (!rd.is_p_restricted(top, p)) {
    FpVec hv(V.dim, 0);
    hv[V.hw] = 1;
    if (generates_simple_g1(V, hv))
      out.crit10_failures.push_back(
          tag + ": v+ (x) w+ generates a simple restricted submodule");
  }
}

}  // namespace sdetail

/// Runs the desk-scale sweep once per process (criteria 8-10 read it).
inline const SweepOutcome& sweep_outcome() {
  static SweepOutcome out;
  static std::once_flag flag;
  std::call_once(flag, [] {
    struct Family {
      std::string datum;
      int p;
    };
    const std::vector<Family> families = {{"A2", 2}, {"A3", 2}, {"A4", 2},
                                          {"C2", 2}, {"G2", 2}, {"G2", 3},
                                          {"A2", 3}};
    for (const auto& fam : families) {
      RootDatum rd = parse_root_datum(fam.datum);
      auto weights = sdetail::restricted_weights(rd, fam.p);
      std::vector<std::pair<Weight, long long>> dims;
      for (const auto& w : weights) {
        long long d = sdetail::dim_simple(rd, w, fam.p);
        if (d > 0 && d <= weakmax_dim_cap()) dims.emplace_back(w, d);
      }
      for (size_t i = 0; i < dims.size(); ++i)
        for (size_t j = i; j < dims.size(); ++j) {
          if (dims[i].second * dims[j].second > weakmax_dim_cap()) continue;
          sdetail::sweep_pair(rd, fam.p, dims[i].first, dims[j].first, out);
        }
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Check registry.

namespace sdetail {

inline std::string join_failures(const std::vector<std::string>& fails,
                                 size_t cap = 5) {
  std::string s;
  for (size_t i = 0; i < fails.size() && i < cap; ++i)
    s += (i ? "; " : "") + fails[i];
  if (fails.size() > cap)
    s += "; ... (" + std::to_string(fails.size()) + " failures)";
  return s;
}

}  // namespace sdetail

inline std::vector<CheckDef> all_checks() {
  using sdetail::join_failures;
  using sdetail::yn;
  std::vector<CheckDef> defs;
  auto reg = [&](std::string id, std::string suite, int crit,
                 std::string expected,
                 std::function<std::pair<std::string, bool>()> run) {
    defs.push_back({std::move(id), std::move(suite), crit, std::move(expected),
                    std::move(run)});
  };

  // ----- g2p2 -----
  // Note: with the convention fixed here (alpha_1 short), the twisted
  // composition factor of L(w1) (x) L(w2) is L(2*w1).
  reg("g2p2/tensor-frobenius-factor", "g2p2", 1, "factor L(2,0) present", [] {
    RootDatum rd = parse_root_datum("G2");
    auto dec = simple_tensor_comp_factors(rd, {1, 0}, {0, 1}, 2);
    auto it = dec.factors.find(Weight{2, 0});
    const bool pass = it != dec.factors.end() && it->second >= 1;
    return std::make_pair(
        pass ? std::string("factor L(2,0) present")
             : std::string("factor L(2,0) missing"),
        pass);
  });
  reg("g2p2/decide-notcr-frobenius", "g2p2", 1,
      "NotCR with frobenius_factor certificate", [] {
        RootDatum rd = parse_root_datum("G2");
        auto dec = decide_cr(rd, {1, 0}, {0, 1}, 2);
        count_decision(dec);
        const bool pass =
            dec.overall.verdict == Verdict::NotCR &&
            rule_family(dec.overall.rule) == "frobenius_factor";
        return std::make_pair(std::string(verdict_name(dec.overall.verdict)) +
                                  " rule=" + dec.overall.rule,
                              pass);
      });

  // ----- g2p5 -----
  reg("g2p5/low-weyl-modules-simple", "g2p5", 2,
      "Delta simple for all five low weights", [] {
        RootDatum rd = parse_root_datum("G2");
        const std::vector<Weight> low = {
            {1, 0}, {2, 0}, {3, 0}, {0, 1}, {1, 1}};
        std::vector<std::string> fails;
        for (const auto& d1 : low) {
          if (rd.pairing(d1, rd.highest_root) >= 4)
            fails.push_back(weight_to_string(d1) + ": pairing >= 4");
          if (!jantzen_sum(rd, d1, 5).empty())
            fails.push_back(weight_to_string(d1) + ": nonzero Jantzen sum");
          auto wcf = weyl_comp_factors(rd, d1, 5);
          if (!wcf.determined || wcf.factors.size() != 1)
            fails.push_back(weight_to_string(d1) + ": Delta not simple");
        }
        return sdetail::ok_or(join_failures(fails),
                              "Delta simple for all five low weights");
      });

  // ----- g2p7 -----
  reg("g2p7/delta-2w1-unique-trivial-factor", "g2p7", 2,
      "L(0) in Delta(2w1) only", [] {
        RootDatum rd = parse_root_datum("G2");
        const std::vector<Weight> low = {
            {1, 0}, {2, 0}, {3, 0}, {0, 1}, {1, 1}};
        std::vector<std::string> fails;
        for (const auto& d1 : low) {
          auto wcf = weyl_comp_factors(rd, d1, 7);
          if (!wcf.determined) {
            fails.push_back(weight_to_string(d1) + ": undetermined");
            continue;
          }
          const bool has_trivial = wcf.factors.count(Weight{0, 0}) > 0;
          const bool expect = (d1 == Weight{2, 0});
          if (has_trivial != expect)
            fails.push_back(weight_to_string(d1) + ": L(0) factor " +
                            yn(has_trivial));
        }
        return sdetail::ok_or(join_failures(fails), "L(0) in Delta(2w1) only");
      });
  for (const auto& pair : std::vector<std::pair<Weight, Weight>>{
           {{5, 0}, {0, 6}}, {{6, 0}, {0, 6}}}) {
    reg("g2p7/gf-cutoff-" + weight_to_string(pair.first) + "x" +
            weight_to_string(pair.second),
        "g2p7", 3, "no good-filtration factor with <d',a1v> >= 14",
        [pair] {
          RootDatum rd = parse_root_datum("G2");
          auto gf = gf_mults(rd, pair.first, pair.second);
          std::vector<std::string> fails;
          for (const auto& [d, m] : gf)
            if (m != 0 && d[0] >= 14)
              fails.push_back(weight_to_string(d) + " mult " +
                              std::to_string(m));
          return sdetail::ok_or(
              join_failures(fails),
              "no good-filtration factor with <d',a1v> >= 14");
        });
  }

  // ----- g2p3 -----
  reg("g2p3/factor-3w1-in-w2xw2", "g2p3", 4, "factor L(3,0) present", [] {
    RootDatum rd = parse_root_datum("G2");
    auto dec = simple_tensor_comp_factors(rd, {0, 1}, {0, 1}, 3);
    const bool pass = dec.factors.count(Weight{3, 0}) > 0;
    return std::make_pair(
        pass ? std::string("factor L(3,0) present")
             : std::string("factor L(3,0) missing"),
        pass);
  });
  reg("g2p3/factor-3w2-in-w1+2w2xw1", "g2p3", 4, "factor L(0,3) present", [] {
    RootDatum rd = parse_root_datum("G2");
    auto dec = simple_tensor_comp_factors(rd, {1, 2}, {1, 0}, 3);
    const bool pass = dec.factors.count(Weight{0, 3}) > 0;
    return std::make_pair(
        pass ? std::string("factor L(0,3) present")
             : std::string("factor L(0,3) missing"),
        pass);
  });
  reg("g2p3/unique-nonrestricted-5w1", "g2p3", 4,
      "L(5,0) unique non-restricted factor", [] {
        RootDatum rd = parse_root_datum("G2");
        auto dec = simple_tensor_comp_factors(rd, {2, 1}, {0, 1}, 3);
        if (!dec.determined)
          return std::make_pair(std::string("factors undetermined"), false);
        std::vector<Weight> nonres;
        for (const auto& [w, m] : dec.factors)
          if (!rd.is_p_restricted(w, 3)) nonres.push_back(w);
        const bool pass = nonres.size() == 1 && nonres[0] == Weight{5, 0};
        std::string actual = "non-restricted factors:";
        for (const auto& w : nonres) actual += " " + weight_to_string(w);
        return std::make_pair(actual, pass);
      });
  reg("g2p3/dims-seven", "g2p3", 4, "dim L(w1) = dim L(w2) = 7", [] {
    RootDatum rd = parse_root_datum("G2");
    const long long d1 = sdetail::dim_simple(rd, {1, 0}, 3);
    const long long d2 = sdetail::dim_simple(rd, {0, 1}, 3);
    return std::make_pair("dim L(w1)=" + std::to_string(d1) + " dim L(w2)=" +
                              std::to_string(d2),
                          d1 == 7 && d2 == 7);
  });
  reg("g2p3/nabla-w2-nonsimple", "g2p3", 4, "Delta(w2) has 2 factors", [] {
    RootDatum rd = parse_root_datum("G2");
    auto wcf = weyl_comp_factors(rd, {0, 1}, 3);
    return std::make_pair(
        "determined=" + std::string(yn(wcf.determined)) + " factors=" +
            std::to_string(wcf.factors.size()),
        wcf.determined && wcf.factors.size() > 1);
  });
  reg("g2p3/classifier-long-short-sweep", "g2p3", 4,
      "CR iff long/short shape; CR tensors equal ch L(lambda+mu)", [] {
        RootDatum rd = parse_root_datum("G2");
        std::vector<std::string> fails;
        auto weights = sdetail::restricted_weights(rd, 3);
        for (const auto& l : weights) {
          if (is_zero(l)) continue;
          for (const auto& m : weights) {
            if (is_zero(m)) continue;
            auto v = smallprime_classifier(rd, l, m, 3);
            count_verdict(v);
            auto [ll, ls] = rd.long_short_split(l);
            auto [ml, ms] = rd.long_short_split(m);
            const bool shape = (is_zero(ls) && is_zero(ml)) ||
                               (is_zero(ll) && is_zero(ms));
            if ((v.verdict == Verdict::CR) != shape) {
              fails.push_back(weight_to_string(l) + "x" +
                              weight_to_string(m) + ": verdict mismatch");
              continue;
            }
            if (shape) {
              auto cl = simple_character(rd, l, 3);
              auto cm = simple_character(rd, m, 3);
              auto cs = simple_character(rd, add(l, m), 3);
              if (!cl || !cm || !cs || tensor(*cl, *cm) != *cs)
                fails.push_back(weight_to_string(l) + "x" +
                                weight_to_string(m) +
                                ": character identity fails");
            }
          }
        }
        return sdetail::ok_or(
            join_failures(fails),
            "CR iff long/short shape; CR tensors equal ch L(lambda+mu)");
      });

  // ----- c3p2 -----
  reg("c3p2/multiplicity-two", "c3p2", 5, "[L(w1)xL(w2):L(w1)] = 2", [] {
    RootDatum rd = parse_root_datum("C3");
    auto dec = simple_tensor_comp_factors(rd, {1, 0, 0}, {0, 1, 0}, 2);
    auto it = dec.factors.find(Weight{1, 0, 0});
    const long long m = it == dec.factors.end() ? 0 : it->second;
    return std::make_pair("multiplicity " + std::to_string(m), m == 2);
  });
  reg("c3p2/hom-weyl-one", "c3p2", 5,
      "hom_weyl_dim(Delta(w1) (x) Delta(w2), w1) = 1", [] {
        RootDatum rd = parse_root_datum("C3");
        auto D1 = weyl_module(rd, {1, 0, 0}, 2);
        auto D2 = weyl_module(rd, {0, 1, 0}, 2);
        auto V = tensor_modules(*D1, *D2);
        const int h = hom_weyl_dim(V, {1, 0, 0});
        return std::make_pair("hom_weyl_dim = " + std::to_string(h), h == 1);
      });
  reg("c3p2/classifier-notcr", "c3p2", 5, "NotCR for (w1, w2)", [] {
    RootDatum rd = parse_root_datum("C3");
    auto v = smallprime_classifier(rd, {1, 0, 0}, {0, 1, 0}, 2);
    count_verdict(v);
    return std::make_pair(std::string(verdict_name(v.verdict)),
                          v.verdict == Verdict::NotCR);
  });

  // ----- anp2 -----
  reg("anp2/natural-closed-form", "anp2", 6,
      "natural_tensor_cr equals even-support criterion, n <= 10", [] {
        std::vector<std::string> fails;
        for (int n = 1; n <= 10; ++n) {
          RootDatum rd = build_root_datum('A', n);
          for (const auto& mu : sdetail::restricted_weights(rd, 2)) {
            auto v = natural_tensor_cr(mu, 2);
            count_verdict(v);
            if ((v.verdict == Verdict::CR) != sdetail::an_closed_form_cr(mu))
              fails.push_back("n=" + std::to_string(n) + " mu=" +
                              weight_to_string(mu));
          }
        }
        return sdetail::ok_or(
            join_failures(fails),
            "natural_tensor_cr equals even-support criterion, n <= 10");
      });
  reg("anp2/remark-decomposition", "anp2", 6,
      "V (x) L(mu) = L(w1+mu) + L(mu-w_i1+w_{i1+1}) as characters, n <= 8",
      [] {
        std::vector<std::string> fails;
        for (int n = 2; n <= 8; ++n) {
          RootDatum rd = build_root_datum('A', n);
          for (const auto& mu : sdetail::restricted_weights(rd, 2)) {
            if (is_zero(mu) || !sdetail::an_closed_form_cr(mu)) continue;
            int i1 = 0;
            for (int i = 1; i <= n; ++i)
              if (mu[i - 1] == 1) {
                i1 = i;
                break;
              }
            Weight s1 = add(fundamental_weight(n, 1), mu);
            Weight s2 = mu;
            s2[i1 - 1] -= 1;
            if (i1 + 1 <= n) s2[i1] += 1;
            auto cv = simple_character(rd, fundamental_weight(n, 1), 2);
            auto cm = simple_character(rd, mu, 2);
            auto c1 = simple_character(rd, s1, 2);
            auto c2 = simple_character(rd, s2, 2);
            if (!cv || !cm || !c1 || !c2) {
              fails.push_back("n=" + std::to_string(n) + " mu=" +
                              weight_to_string(mu) + ": undetermined");
              continue;
            }
            Character lhs = tensor(*cv, *cm);
            Character rhs = *c1;
            add_to(rhs, *c2);
            if (lhs != rhs)
              fails.push_back("n=" + std::to_string(n) + " mu=" +
                              weight_to_string(mu) + ": mismatch");
          }
        }
        return sdetail::ok_or(
            join_failures(fails),
            "V (x) L(mu) = L(w1+mu) + L(mu-w_i1+w_{i1+1}) as characters");
      });
  reg("anp2/nabla-w1-wn-simple-iff-n-even", "anp2", 7,
      "Delta(w1+wn) simple iff n even, n in 2..7", [] {
        std::vector<std::string> fails;
        for (int n = 2; n <= 7; ++n) {
          RootDatum rd = build_root_datum('A', n);
          Weight l = add(fundamental_weight(n, 1), fundamental_weight(n, n));
          auto wcf = weyl_comp_factors(rd, l, 2);
          if (!wcf.determined) {
            fails.push_back("n=" + std::to_string(n) + ": undetermined");
            continue;
          }
          const bool simple = wcf.factors.size() == 1;
          if (simple != (n % 2 == 0))
            fails.push_back("n=" + std::to_string(n) + ": simple=" +
                            yn(simple));
          if (!simple && !wcf.factors.count(zero_weight(n)))
            fails.push_back("n=" + std::to_string(n) + ": L(0) missing");
        }
        return sdetail::ok_or(join_failures(fails),
                              "Delta(w1+wn) simple iff n even");
      });
  reg("anp2/nabla-w2-wn-1-simple-iff-n-2-mod-4", "anp2", 7,
      "Delta(w2+w_{n-1}) simple iff n = 2 mod 4, n in 4..8", [] {
        std::vector<std::string> fails;
        for (int n = 4; n <= 8; ++n) {
          RootDatum rd = build_root_datum('A', n);
          Weight l =
              add(fundamental_weight(n, 2), fundamental_weight(n, n - 1));
          auto wcf = weyl_comp_factors(rd, l, 2);
          if (!wcf.determined) {
            fails.push_back("n=" + std::to_string(n) + ": undetermined");
            continue;
          }
          const bool simple = wcf.factors.size() == 1;
          if (simple != (n % 4 == 2))
            fails.push_back("n=" + std::to_string(n) + ": simple=" +
                            yn(simple));
        }
        return sdetail::ok_or(join_failures(fails),
                              "Delta(w2+w_{n-1}) simple iff n = 2 mod 4");
      });
  reg("anp2/dim-L-w2", "anp2", 7, "dim L(w2) = n(n+1)/2 at p=2, n in 2..8",
      [] {
        std::vector<std::string> fails;
        for (int n = 2; n <= 8; ++n) {
          RootDatum rd = build_root_datum('A', n);
          const long long d =
              sdetail::dim_simple(rd, fundamental_weight(n, 2), 2);
          if (d != 1LL * n * (n + 1) / 2)
            fails.push_back("n=" + std::to_string(n) + ": dim " +
                            std::to_string(d));
        }
        return sdetail::ok_or(join_failures(fails),
                              "dim L(w2) = n(n+1)/2 at p=2");
      });

  // ----- bnp2 -----
  reg("bnp2/spin-minuscule-char", "bnp2", 0,
      "ch L(w3) = chi(w3), mass 8 (B3, p=2)", [] {
        RootDatum rd = parse_root_datum("B3");
        auto ch = simple_character(rd, {0, 0, 1}, 2);
        const bool pass =
            ch && *ch == weyl_character(rd, {0, 0, 1}) && mass(*ch) == 8;
        return std::make_pair(
            std::string(pass ? "minuscule character, mass 8" : "mismatch"),
            pass);
      });
  reg("bnp2/refined-split-characters", "bnp2", 0,
      "ch L(lambda'+w3) = ch L(lambda') ch L(w3) (B3, p=2)", [] {
        RootDatum rd = parse_root_datum("B3");
        std::vector<std::string> fails;
        for (const Weight& lp :
             std::vector<Weight>{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}) {
          auto cl = simple_character(rd, lp, 2);
          auto cs = simple_character(rd, {0, 0, 1}, 2);
          auto cb = simple_character(rd, add(lp, {0, 0, 1}), 2);
          if (!cl || !cs || !cb || tensor(*cl, *cs) != *cb)
            fails.push_back(weight_to_string(lp));
        }
        return sdetail::ok_or(join_failures(fails),
                              "refined factorization characters agree");
      });
  reg("bnp2/chain-cases", "bnp2", 0, "case analysis verdicts (B4, p=2)", [] {
    RootDatum rd = parse_root_datum("B4");
    std::vector<std::string> fails;
    auto expect = [&](const Weight& l, const Weight& m, Verdict want) {
      auto v = smallprime_classifier(rd, l, m, 2);
      count_verdict(v);
      if (v.verdict != want)
        fails.push_back(weight_to_string(l) + "x" + weight_to_string(m) +
                        ": got " + verdict_name(v.verdict));
    };
    expect({0, 0, 0, 1}, {1, 0, 0, 0}, Verdict::CR);     // lambda' = 0
    expect({0, 0, 1, 0}, {1, 0, 0, 0}, Verdict::NotCR);  // A-classifier
    expect({0, 1, 0, 0}, {0, 1, 0, 0}, Verdict::NotCR);  // A-classifier
    expect({1, 0, 0, 0}, {1, 0, 0, 1}, Verdict::NotCR);  // sum not 2-restricted
    return sdetail::ok_or(join_failures(fails), "case analysis verdicts");
  });
  reg("bnp2/outside-proof-unknown", "bnp2", 0,
      "lambda' = w1 shape stays Unknown in the chain (B4, p=2)", [] {
        RootDatum rd = parse_root_datum("B4");
        auto v = smallprime_classifier(rd, {1, 0, 0, 0}, {0, 1, 0, 1}, 2);
        return std::make_pair(std::string(verdict_name(v.verdict)),
                              v.verdict == Verdict::Unknown);
      });

  // ----- f4p2 -----
  reg("f4p2/classifier-shapes", "f4p2", 0, "long/short shape verdicts", [] {
    RootDatum rd = parse_root_datum("F4");
    std::vector<std::string> fails;
    auto expect = [&](const Weight& l, const Weight& m, Verdict want) {
      auto v = smallprime_classifier(rd, l, m, 2);
      count_verdict(v);
      if (v.verdict != want)
        fails.push_back(weight_to_string(l) + "x" + weight_to_string(m) +
                        ": got " + verdict_name(v.verdict));
    };
    expect({1, 0, 0, 0}, {0, 0, 0, 1}, Verdict::CR);
    expect({1, 1, 0, 0}, {0, 0, 1, 0}, Verdict::CR);
    expect({1, 0, 0, 0}, {0, 1, 0, 0}, Verdict::NotCR);
    expect({0, 0, 0, 1}, {0, 0, 1, 0}, Verdict::NotCR);
    return sdetail::ok_or(join_failures(fails), "long/short shape verdicts");
  });
  reg("f4p2/levi-c3-propagation", "f4p2", 0,
      "truncation [2,4] drives the C3 classifier to NotCR", [] {
        RootDatum rd = parse_root_datum("F4");
        auto v =
            levi_propagation(rd, {0, 0, 1, 0}, {0, 0, 0, 1}, {2, 3, 4}, 2);
        count_verdict(v);
        return std::make_pair(std::string(verdict_name(v.verdict)) + " rule=" +
                                  v.rule,
                              v.verdict == Verdict::NotCR);
      });

  // ----- rule coverage helpers (suite "rules") -----
  reg("rules/sum-not-restricted", "rules", 0, "NotCR for (w1, w1) in A1 p=2",
      [] {
        RootDatum rd = parse_root_datum("A1");
        auto v = necessary_sum_restricted(rd, {1}, {1}, 2);
        count_verdict(v);
        return std::make_pair(std::string(verdict_name(v.verdict)),
                              v.verdict == Verdict::NotCR);
      });
  reg("rules/multiplicity-free", "rules", 0,
      "CR for (w2, w5) in A6 p=2 via multiplicity freeness", [] {
        RootDatum rd = parse_root_datum("A6");
        auto v = multiplicity_free_test(rd, fundamental_weight(6, 2),
                                        fundamental_weight(6, 5), 2);
        count_verdict(v);
        return std::make_pair(std::string(verdict_name(v.verdict)) + " rule=" +
                                  v.rule,
                              v.verdict == Verdict::CR);
      });
  reg("rules/serre-propagation", "rules", 0,
      "NotCR for L(w1+w2) (x) L(w2) via dim L(w1) = 7 (G2, p=3)", [] {
        RootDatum rd = parse_root_datum("G2");
        auto w = smallprime_classifier(rd, {0, 1}, {0, 1}, 3);
        auto v = serre_propagation(7, w, 3);
        count_verdict(v);
        return std::make_pair(std::string(verdict_name(v.verdict)) + " rule=" +
                                  v.rule,
                              v.verdict == Verdict::NotCR);
      });
  reg("rules/g2-inequalities", "rules", 0,
      "p=5 (w1+w2, w1+w2) NotCR; p=7 (5w1, 6w2) Unknown", [] {
        RootDatum rd = parse_root_datum("G2");
        auto v1 = g2_inequalities(rd, {1, 1}, {1, 1}, 5);
        count_verdict(v1);
        auto v2 = g2_inequalities(rd, {5, 0}, {0, 6}, 7);
        const bool pass = v1.verdict == Verdict::NotCR &&
                          v2.verdict == Verdict::Unknown;
        return std::make_pair(std::string(verdict_name(v1.verdict)) + " / " +
                                  verdict_name(v2.verdict),
                              pass);
      });
  reg("rules/decide-two-digit-cr", "rules", 0,
      "A2 p=2 (w1+2w2, w2+2w1) CR by digit conjunction", [] {
        RootDatum rd = parse_root_datum("A2");
        auto dec = decide_cr(rd, {1, 2}, {2, 1}, 2);
        count_decision(dec);
        return std::make_pair(std::string(verdict_name(dec.overall.verdict)) +
                                  " rule=" + dec.overall.rule,
                              dec.overall.verdict == Verdict::CR &&
                                  dec.overall.rule == "digit_conjunction");
      });
  reg("rules/decide-g2p3-notcr", "rules", 0,
      "G2 p=3 (w1+2w2, w1) NotCR", [] {
        RootDatum rd = parse_root_datum("G2");
        auto dec = decide_cr(rd, {1, 2}, {1, 0}, 3);
        count_decision(dec);
        return std::make_pair(std::string(verdict_name(dec.overall.verdict)),
                              dec.overall.verdict == Verdict::NotCR);
      });
  reg("rules/trivial-factor", "rules", 0,
      "A2 p=2 (0, w1) CR with a trivial digit rule", [] {
        RootDatum rd = parse_root_datum("A2");
        auto dec = decide_cr(rd, {0, 0}, {1, 0}, 2);
        count_decision(dec);
        const bool pass = dec.overall.verdict == Verdict::CR &&
                          !dec.digits.empty() &&
                          dec.digits[0].verdict.rule == "trivial";
        return std::make_pair(std::string(verdict_name(dec.overall.verdict)) +
                                  " rule=" + dec.digits[0].verdict.rule,
                              pass);
      });
  reg("rules/oracle-fallback", "rules", 0,
      "explicit oracle decides B4 p=2 (w1, w2) when rules are disabled", [] {
        RootDatum rd = parse_root_datum("B4");
        DecideOptions opts;
        opts.use_oracle = true;
        opts.use_levi = false;
        opts.use_jantzen = false;
        auto dec = decide_cr(rd, {1, 0, 0, 0}, {0, 1, 0, 0}, 2, opts);
        count_decision(dec);
        const bool pass = dec.overall.verdict != Verdict::Unknown &&
                          (rule_family(dec.overall.rule) == "oracle" ||
                           rule_family(dec.digits[0].verdict.rule) ==
                               "oracle");
        return std::make_pair(std::string(verdict_name(dec.overall.verdict)) +
                                  " rule=" + dec.digits[0].verdict.rule,
                              pass);
      });

  // ----- weakmax -----
  reg("weakmax/an-classifier-vs-oracle", "weakmax", 8,
      "classifier matches is_cr_g on the A_n p=2 sweep", [] {
        const auto& sw = sweep_outcome();
        count_rule("an_p2_classifier");
        return sdetail::ok_or(join_failures(sw.crit8_failures),
                              std::to_string(sw.pairs_an) +
                                  " type-A pairs agree with the oracle");
      });
  reg("weakmax/theorems-a-b", "weakmax", 9,
      "is_cr_g iff is_cr_g1; CR implies restricted maximal weights", [] {
        const auto& sw = sweep_outcome();
        return sdetail::ok_or(join_failures(sw.crit9_failures),
                              std::to_string(sw.pairs_all) +
                                  " pairs satisfy Theorems A/B");
      });
  reg("weakmax/weakly-maximal-properties", "weakmax", 10,
      "raising step, component lemma, non-restricted highest vectors", [] {
        const auto& sw = sweep_outcome();
        return sdetail::ok_or(join_failures(sw.crit10_failures),
                              std::to_string(sw.pairs_all) +
                                  " pairs satisfy the weak-maximality laws");
      });
  reg("weakmax/reduction-theorem-random", "weakmax", 11,
      "50 random two-digit pairs: decide_cr = digit conjunction = oracle",
      [] {
        std::mt19937 rng(20260823);
        std::vector<std::string> fails;
        int accepted = 0;
        const std::vector<std::string> data = {"A2", "A3"};
        std::map<std::string, std::vector<std::pair<Weight, long long>>>
            pool;
        for (const auto& key : data) {
          RootDatum rd = parse_root_datum(key);
          for (const auto& w : sdetail::restricted_weights(rd, 2)) {
            long long d = sdetail::dim_simple(rd, w, 2);
            if (d > 0) pool[key].emplace_back(w, d);
          }
        }
        int attempts = 0;
        while (accepted < 50 && attempts < 5000) {
          ++attempts;
          const std::string& key = data[rng() % data.size()];
          RootDatum rd = parse_root_datum(key);
          const auto& ws = pool[key];
          auto pick = [&] { return ws[rng() % ws.size()]; };
          auto [l0, dl0] = pick();
          auto [l1, dl1] = pick();
          auto [m0, dm0] = pick();
          auto [m1, dm1] = pick();
          if (is_zero(l1) && is_zero(m1)) continue;  // want two digits
          if (dl0 * dl1 * dm0 * dm1 > weakmax_dim_cap()) continue;
          const Weight l = add(l0, scale(2, l1)), m = add(m0, scale(2, m1));
          try {
            DecideOptions opts;
            opts.use_oracle = true;
            auto dec = decide_cr(rd, l, m, 2, opts);
            count_decision(dec);
            const bool conj =
                is_cr_g(tensor_modules(*simple_module(rd, l0, 2),
                                       *simple_module(rd, m0, 2))) &&
                is_cr_g(tensor_modules(*simple_module(rd, l1, 2),
                                       *simple_module(rd, m1, 2)));
            auto La = tensor_modules(
                *simple_module(rd, l0, 2),
                frobenius_twist_module(*simple_module(rd, l1, 2)));
            auto Lb = tensor_modules(
                *simple_module(rd, m0, 2),
                frobenius_twist_module(*simple_module(rd, m1, 2)));
            const bool assembled = is_cr_g(tensor_modules(La, Lb));
            const bool decided = dec.overall.verdict == Verdict::CR;
            if (dec.overall.verdict == Verdict::Unknown ||
                decided != conj || decided != assembled)
              fails.push_back(key + " (" + weight_to_string(l) + ")x(" +
                              weight_to_string(m) + "): decide=" +
                              verdict_name(dec.overall.verdict) + " conj=" +
                              yn(conj) + " oracle=" + yn(assembled));
            ++accepted;
          } catch (const std::invalid_argument&) {
            continue;  // a comparison Weyl module exceeded its bound
          }
        }
        if (accepted < 50)
          fails.push_back("only " + std::to_string(accepted) +
                          " samples accepted");
        return sdetail::ok_or(join_failures(fails),
                              "50 random two-digit pairs agree");
      });

  // ----- charbox cross-algorithm oracle -----
  reg("charbox/freudenthal-vs-alternating", "charbox", 12,
      "Freudenthal equals the alternating Weyl sum (rank <= 4, dim <= 5000)",
      [] {
        const std::vector<std::string> data = {"A1", "A2", "A3", "A4", "B2",
                                               "B3", "B4", "C3", "C4", "D4",
                                               "F4", "G2"};
        std::vector<std::string> fails;
        long long tested = 0;
        for (const auto& key : data) {
          RootDatum rd = parse_root_datum(key);
          // Enumerate dominant weights with Weyl dimension <= 5000.
          std::vector<Weight> todo;
          Weight w(rd.rank, 0);
          std::function<void(int)> rec = [&](int i) {
            if (weyl_dim(rd, w) > 5000) return;
            if (i == rd.rank) {
              todo.push_back(w);
              return;
            }
            for (int c = 0;; ++c) {
              w[i] = c;
              if (weyl_dim(rd, w) > 5000) break;
              rec(i + 1);
            }
            w[i] = 0;
          };
          rec(0);
          for (const auto& lambda : todo) {
            Character ch = weyl_character(rd, lambda);
            auto oracle = weyl_character_alternating_dominant(rd, lambda);
            std::map<Weight, long long> dom;
            for (const auto& [x, mlt] : ch)
              if (rd.is_dominant(x)) dom[x] = mlt;
            if (dom != oracle) {
              fails.push_back(key + " " + weight_to_string(lambda));
              if (fails.size() > 5) return sdetail::ok_or(
                  join_failures(fails), "");
            }
            ++tested;
          }
        }
        return sdetail::ok_or(join_failures(fails),
                              std::to_string(tested) +
                                  " characters agree across algorithms");
      });

  // ----- coverage (must be last; reads the counters) -----
  reg("all/rule-coverage", "coverage", 0, "every decision rule fired", [] {
    const std::vector<std::string> required = {
        "trivial",          "an_p2_classifier", "natural_tensor_cr",
        "sum_not_restricted", "frobenius_factor", "multiplicity_free",
        "refined_split_simple", "smallprime_classifier", "bn_p2",
        "serre",            "levi",             "g2_inequality",
        "oracle",           "digit_conjunction"};
    std::vector<std::string> missing;
    {
      std::lock_guard<std::mutex> lk(rule_mutex());
      for (const auto& r : required)
        if (!rule_counter().count(r)) missing.push_back(r);
    }
    return sdetail::ok_or(join_failures(missing, 20),
                          "all decision rules fired");
  });

  return defs;
}

inline std::vector<std::string> suite_names() {
  return {"g2p2", "g2p5", "g2p7", "g2p3", "c3p2",
          "anp2", "bnp2", "f4p2", "weakmax", "all"};
}

inline std::vector<CheckDef> checks_for(const std::string& suite) {
  std::vector<CheckDef> out;
  for (auto& c : all_checks()) {
    if (suite == "all" || c.suite == suite) out.push_back(std::move(c));
  }
  return out;
}

/// Runs a suite with up to `jobs` concurrent checks (the coverage check, if
/// present, runs last on its own).
inline SuiteReport run_suite(const std::string& suite, int jobs = 1) {
  auto defs = checks_for(suite);
  SuiteReport report;
  report.suite = suite;
  report.checks.resize(defs.size());
  const auto start = std::chrono::steady_clock::now();

  // Keep the coverage check sequentialized at the end.
  size_t parallel_count = defs.size();
  while (parallel_count > 0 && defs[parallel_count - 1].suite == "coverage")
    --parallel_count;

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= parallel_count) return;
      CheckResult& r = report.checks[i];
      r.id = defs[i].id;
      r.suite = defs[i].suite;
      r.criterion = defs[i].criterion;
      r.expected = defs[i].expected;
      try {
        auto [actual, pass] = defs[i].run();
        r.actual = actual;
        r.pass = pass;
      } catch (const std::exception& e) {
        r.actual = std::string("exception: ") + e.what();
        r.pass = false;
      }
    }
  };
  const int nthreads = std::max(1, jobs);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (size_t i = parallel_count; i < defs.size(); ++i) {
    CheckResult& r = report.checks[i];
    r.id = defs[i].id;
    r.suite = defs[i].suite;
    r.criterion = defs[i].criterion;
    r.expected = defs[i].expected;
    try {
      auto [actual, pass] = defs[i].run();
      r.actual = actual;
      r.pass = pass;
    } catch (const std::exception& e) {
      r.actual = std::string("exception: ") + e.what();
      r.pass = false;
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  {
    std::lock_guard<std::mutex> lk(rule_mutex());
    report.rule_counts = rule_counter();
  }
  return report;
}

}  // namespace suites
}  // namespace repcr
