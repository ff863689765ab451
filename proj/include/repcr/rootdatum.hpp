#pragma once

// Root-system database for the simple types A-G: Cartan matrix, positive
// roots in simple-root coordinates, coroot pairings, dominance order and
// Weyl-orbit utilities.  All arithmetic is exact (integers only).
//
// Labelling conventions (Bourbaki, with the length assignments fixed once):
//   B_n : alpha_n short           (Delta_s = {alpha_n})
//   C_n : alpha_n long            (Delta_l = {alpha_n})
//   F_4 : alpha_1, alpha_2 long   (Delta_l = {alpha_1, alpha_2})
//   G_2 : alpha_1 short, <alpha_2, alpha_1^vee> = -3, <alpha_1, alpha_2^vee> = -1

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "repcr/weights.hpp"

namespace repcr {

class RootDatum {
 public:
  char type_letter = 0;
  int rank = 0;
  /// cartan[i][j] = <alpha_j, alpha_i^vee>.
  std::vector<std::vector<int>> cartan;
  /// Symmetrizer: d[i] = (alpha_i, alpha_i)/2, normalized so min d = 1.
  std::vector<int> d;
  /// Positive roots in simple-root coordinates, sorted by height then lex.
  std::vector<RootVec> positive_roots;
  /// Half squared length (alpha,alpha)/2 per positive root.
  std::vector<int> root_half_norm;
  Weight rho;                 // all-ones weight
  RootVec highest_root;       // alpha_0
  RootVec highest_short_root; // alpha~_0 (equals alpha_0 when simply laced)

  RootDatum() = default;

  /// <lambda, alpha_i^vee> for lambda in fundamental coordinates.
  static int coord(const Weight& w, int i) { return w[i]; }

  /// alpha_j expressed in fundamental-weight coordinates (Cartan column j).
  Weight simple_root_weight(int j) const {
    Weight w(rank);
    for (int i = 0; i < rank; ++i) w[i] = cartan[i][j];
    return w;
  }

  /// Root vector (simple-root coords) -> fundamental-weight coordinates.
  Weight root_to_weight(const RootVec& beta) const {
    Weight w(rank, 0);
    for (int j = 0; j < rank; ++j)
      if (beta[j] != 0)
        for (int i = 0; i < rank; ++i) w[i] += beta[j] * cartan[i][j];
    return w;
  }

  /// (beta,beta)/2 for beta a root (integer by construction).
  int half_norm(const RootVec& beta) const {
    long long n = 0;
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        n += static_cast<long long>(beta[i]) * beta[j] * d[i] * cartan[i][j];
    assert(n > 0 && n % 2 == 0);
    return static_cast<int>(n / 2);
  }

  /// Exact coroot pairing <lambda, beta^vee>.
  int pairing(const Weight& lambda, const RootVec& beta) const {
    long long num = 0;
    for (int i = 0; i < rank; ++i)
      num += static_cast<long long>(beta[i]) * d[i] * lambda[i];
    const int hn = half_norm(beta);
    assert(num % hn == 0);
    return static_cast<int>(num / hn);
  }

  /// <beta, alpha_i^vee> for beta in simple-root coordinates.
  int root_pairing(const RootVec& beta, int i) const {
    int s = 0;
    for (int j = 0; j < rank; ++j) s += beta[j] * cartan[i][j];
    return s;
  }

  bool is_root(const RootVec& beta) const {
    RootVec b = beta;
    bool neg = false;
    for (int x : b)
      if (x < 0) neg = true;
    if (neg)
      for (int& x : b) x = -x;
    return std::find(positive_roots.begin(), positive_roots.end(), b) !=
           positive_roots.end();
  }

  bool is_long_root(const RootVec& beta) const {
    int dmax = *std::max_element(d.begin(), d.end());
    return half_norm(beta) == dmax;
  }

  bool is_dominant(const Weight& w) const {
    for (int x : w)
      if (x < 0) return false;
    return true;
  }

  bool in_X1_prime(const Weight& w, int p) const {
    for (int x : w)
      if (x >= p) return false;
    return true;
  }

  bool is_p_restricted(const Weight& w, int p) const {
    return is_dominant(w) && in_X1_prime(w, p);
  }

  /// Simple reflection s_i acting on fundamental coordinates.
  Weight reflect(const Weight& w, int i) const {
    Weight r = w;
    const int c = w[i];
    if (c == 0) return r;
    for (int k = 0; k < rank; ++k) r[k] -= c * cartan[k][i];
    return r;
  }

  /// Root coordinates of (lambda - mu); empty optional when not in the
  /// integral root lattice.
  std::optional<RootVec> root_coords(const Weight& diff) const {
    // Solve cartan * x = diff with the precomputed adjugate.
    std::vector<long long> num(rank, 0);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        num[i] += static_cast<long long>(adjugate_[i][j]) * diff[j];
    RootVec x(rank);
    for (int i = 0; i < rank; ++i) {
      if (num[i] % det_ != 0) return std::nullopt;
      x[i] = static_cast<int>(num[i] / det_);
    }
    return x;
  }

  /// mu <= lambda in the dominance order.
  bool dominance_leq(const Weight& mu, const Weight& lambda) const {
    auto x = root_coords(sub(lambda, mu));
    if (!x) return false;
    for (int c : *x)
      if (c < 0) return false;
    return true;
  }

  /// Dominant Weyl conjugate; optionally reports the number of simple
  /// reflections used (parity = sign of the group element).
  Weight dominant_conjugate(Weight w, int* reflections = nullptr) const {
    int count = 0;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < rank; ++i) {
        if (w[i] < 0) {
          w = reflect(w, i);
          ++count;
          changed = true;
        }
      }
    }
    if (reflections) *reflections = count;
    return w;
  }

  /// Full Weyl orbit of a weight (deterministic order).
  std::vector<Weight> weyl_orbit(const Weight& w) const {
    std::set<Weight> seen;
    std::vector<Weight> queue{dominant_conjugate(w)};
    seen.insert(queue[0]);
    for (size_t q = 0; q < queue.size(); ++q) {
      Weight cur = queue[q];
      for (int i = 0; i < rank; ++i) {
        Weight nx = reflect(cur, i);
        if (seen.insert(nx).second) queue.push_back(nx);
      }
    }
    return queue;
  }

  /// All dominant mu with mu <= lambda (lambda dominant).
  std::vector<Weight> dominant_weights_below(const Weight& lambda) const {
    if (!is_dominant(lambda)) throw std::invalid_argument("dominant_weights_below");
    const int bound = pairing(lambda, highest_root);
    std::vector<int> m(rank);
    for (int i = 0; i < rank; ++i)
      m[i] = pairing(fundamental_weight(rank, i + 1), highest_root);
    std::vector<Weight> out;
    Weight mu(rank, 0);
    std::function<void(int, int)> rec = [&](int idx, int used) {
      if (idx == rank) {
        if (dominance_leq(mu, lambda)) out.push_back(mu);
        return;
      }
      for (int c = 0; used + c * m[idx] <= bound; ++c) {
        mu[idx] = c;
        rec(idx + 1, used + c * m[idx]);
      }
      mu[idx] = 0;
    };
    rec(0, 0);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Long/short simple-root index sets (1-based). Requires two root lengths.
  std::pair<std::vector<int>, std::vector<int>> long_short_sets() const {
    int dmax = *std::max_element(d.begin(), d.end());
    int dmin = *std::min_element(d.begin(), d.end());
    if (dmax == dmin) throw std::logic_error("long_short_sets: simply laced");
    std::vector<int> longs, shorts;
    for (int i = 0; i < rank; ++i)
      (d[i] == dmax ? longs : shorts).push_back(i + 1);
    return {longs, shorts};
  }

  /// lambda = lambda_l + lambda_s along the long/short simple coroots.
  std::pair<Weight, Weight> long_short_split(const Weight& lambda) const {
    auto [longs, shorts] = long_short_sets();
    Weight l(rank, 0), s(rank, 0);
    for (int i : longs) l[i - 1] = lambda[i - 1];
    for (int i : shorts) s[i - 1] = lambda[i - 1];
    return {l, s};
  }

  void finalize();  // fills roots, rho, adjugate, highest roots

  long long cartan_det() const { return det_; }
  const std::vector<std::vector<long long>>& cartan_adjugate() const {
    return adjugate_;
  }

 private:
  std::vector<std::vector<long long>> adjugate_;
  long long det_ = 1;
};

namespace detail {

inline std::vector<std::vector<int>> standard_cartan(char type, int rank,
                                                     std::vector<int>& d) {
  auto C = std::vector<std::vector<int>>(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) C[i][i] = 2;
  auto chain = [&](int a, int b) { C[a][b] = C[b][a] = -1; };
  d.assign(rank, 1);
  switch (type) {
    case 'A':
      if (rank < 1) throw std::invalid_argument("A_n needs n>=1");
      for (int i = 0; i + 1 < rank; ++i) chain(i, i + 1);
      break;
    case 'B':
      if (rank < 2) throw std::invalid_argument("B_n needs n>=2");
      for (int i = 0; i + 1 < rank; ++i) chain(i, i + 1);
      C[rank - 2][rank - 1] = -1;  // <alpha_n, alpha_{n-1}^vee>
      C[rank - 1][rank - 2] = -2;  // <alpha_{n-1}, alpha_n^vee>
      for (int i = 0; i < rank - 1; ++i) d[i] = 2;  // alpha_n short
      break;
    case 'C':
      if (rank < 2) throw std::invalid_argument("C_n needs n>=2");
      for (int i = 0; i + 1 < rank; ++i) chain(i, i + 1);
      C[rank - 2][rank - 1] = -2;  // <alpha_n, alpha_{n-1}^vee>
      C[rank - 1][rank - 2] = -1;
      d[rank - 1] = 2;  // alpha_n long
      break;
    case 'D':
      if (rank < 3) throw std::invalid_argument("D_n needs n>=3");
      for (int i = 0; i + 1 < rank - 1; ++i) chain(i, i + 1);
      chain(rank - 3, rank - 1);
      break;
    case 'E': {
      if (rank < 6 || rank > 8) throw std::invalid_argument("E_n needs n in 6..8");
      chain(0, 2);
      chain(2, 3);
      chain(1, 3);
      chain(3, 4);
      chain(4, 5);
      if (rank >= 7) chain(5, 6);
      if (rank == 8) chain(6, 7);
      break;
    }
    case 'F':
      if (rank != 4) throw std::invalid_argument("F needs rank 4");
      chain(0, 1);
      chain(2, 3);
      C[1][2] = -1;  // <alpha_3, alpha_2^vee>
      C[2][1] = -2;  // <alpha_2, alpha_3^vee>
      d[0] = d[1] = 2;  // alpha_1, alpha_2 long
      break;
    case 'G':
      if (rank != 2) throw std::invalid_argument("G needs rank 2");
      C[0][1] = -3;  // <alpha_2, alpha_1^vee>
      C[1][0] = -1;  // <alpha_1, alpha_2^vee>
      d[1] = 3;      // alpha_1 short
      break;
    default:
      throw std::invalid_argument("unknown type letter");
  }
  return C;
}

}  // namespace detail

inline void RootDatum::finalize() {
  rho = Weight(rank, 1);
  // Positive roots: reflection closure of the simple roots.
  std::set<RootVec> pos;
  std::vector<RootVec> queue;
  for (int i = 0; i < rank; ++i) {
    RootVec e(rank, 0);
    e[i] = 1;
    pos.insert(e);
    queue.push_back(e);
  }
  for (size_t q = 0; q < queue.size(); ++q) {
    RootVec beta = queue[q];
    for (int i = 0; i < rank; ++i) {
      int c = root_pairing(beta, i);
      RootVec r = beta;
      r[i] -= c;  // s_i(beta) = beta - <beta, alpha_i^vee> alpha_i
      bool positive = true, negative = true;
      for (int x : r) {
        if (x > 0) negative = false;
        if (x < 0) positive = false;
      }
      if (negative)
        for (int& x : r) x = -x;
      else if (!positive)
        continue;  // cannot happen for roots, defensive
      if (pos.insert(r).second) queue.push_back(r);
    }
  }
  positive_roots.assign(pos.begin(), pos.end());
  std::sort(positive_roots.begin(), positive_roots.end(),
            [](const RootVec& a, const RootVec& b) {
              int ha = 0, hb = 0;
              for (int x : a) ha += x;
              for (int x : b) hb += x;
              if (ha != hb) return ha < hb;
              return a < b;
            });
  root_half_norm.clear();
  for (const auto& r : positive_roots) root_half_norm.push_back(half_norm(r));

  // Adjugate/determinant of the Cartan matrix for dominance tests.
  const int n = rank;
  std::vector<std::vector<long long>> M(n, std::vector<long long>(2 * n, 0));
  // Fraction-free Gauss-Jordan via rational elimination on long double is
  // unacceptable; use exact Bareiss on an augmented integer matrix instead.
  // For the small ranks here, cofactor expansion is simplest and exact.
  std::function<long long(std::vector<std::vector<long long>>&)> det_of =
      [&](std::vector<std::vector<long long>>& A) -> long long {
    int m = static_cast<int>(A.size());
    if (m == 0) return 1;
    if (m == 1) return A[0][0];
    long long s = 0;
    for (int j = 0; j < m; ++j) {
      if (A[0][j] == 0) continue;
      std::vector<std::vector<long long>> B(m - 1, std::vector<long long>(m - 1));
      for (int r = 1; r < m; ++r) {
        int cc = 0;
        for (int c = 0; c < m; ++c)
          if (c != j) B[r - 1][cc++] = A[r][c];
      }
      s += ((j % 2) ? -1 : 1) * A[0][j] * det_of(B);
    }
    return s;
  };
  std::vector<std::vector<long long>> C(n, std::vector<long long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) C[i][j] = cartan[i][j];
  det_ = det_of(C);
  assert(det_ != 0);
  adjugate_.assign(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<std::vector<long long>> B(n - 1, std::vector<long long>(n - 1));
      int rr = 0;
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;  // adjugate = transposed cofactor matrix
        int cc = 0;
        for (int c = 0; c < n; ++c)
          if (c != i) B[rr][cc++] = C[r][c];
        ++rr;
      }
      long long cof = det_of(B);
      adjugate_[i][j] = (((i + j) % 2) ? -1 : 1) * cof;
    }

  // Highest (short) roots: dominance-maximal elements.
  auto leq = [&](const RootVec& a, const RootVec& b) {
    for (int i = 0; i < rank; ++i)
      if (a[i] > b[i]) return false;
    return true;
  };
  int dmax = *std::max_element(d.begin(), d.end());
  int dmin = *std::min_element(d.begin(), d.end());
  for (const auto& r : positive_roots) {
    bool top = true, top_short = half_norm(r) == dmin;
    for (const auto& s : positive_roots) {
      if (!leq(r, s)) continue;
      if (s != r) top = false;
      if (s != r && half_norm(s) == dmin) top_short = false;
    }
    if (top) highest_root = r;
    if (top_short && dmin != dmax) highest_short_root = r;
  }
  if (dmin == dmax) highest_short_root = highest_root;
}

inline RootDatum build_root_datum(char type_letter, int rank) {
  RootDatum rd;
  rd.type_letter = type_letter;
  rd.rank = rank;
  rd.cartan = detail::standard_cartan(type_letter, rank, rd.d);
  rd.finalize();
  return rd;
}

/// Parses a type string like "G2", "A5", "B10".
inline RootDatum parse_root_datum(const std::string& s) {
  if (s.size() < 2) throw std::invalid_argument("type string: " + s);
  return build_root_datum(s[0], std::stoi(s.substr(1)));
}

/// Levi truncation: sub-root-datum spanned by the (1-based, contiguous in the
/// Dynkin diagram) index set I, relabelled to a standard type, plus the
/// induced map on weights.
struct LeviTruncation {
  RootDatum datum;
  std::vector<int> index_map;  // standard label i (0-based) -> parent index (0-based)

  Weight map_weight(const Weight& lambda) const {
    Weight w(datum.rank);
    for (int i = 0; i < datum.rank; ++i) w[i] = lambda[index_map[i]];
    return w;
  }
};

inline LeviTruncation levi_truncate(const RootDatum& rd, std::vector<int> I) {
  if (I.empty()) throw std::invalid_argument("levi_truncate: empty index set");
  std::sort(I.begin(), I.end());
  const int m = static_cast<int>(I.size());
  auto sub_cartan = [&](const std::vector<int>& order) {
    std::vector<std::vector<int>> C(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) C[a][b] = rd.cartan[order[a] - 1][order[b] - 1];
    return C;
  };
  // Candidate standard types of rank m, tried against the index order as
  // given and reversed.
  std::vector<char> letters;
  if (m == 1)
    letters = {'A'};
  else if (m == 2)
    letters = {'A', 'B', 'C', 'G'};
  else
    letters = {'A', 'B', 'C', 'D', 'F', 'E', 'G'};
  for (bool reversed : {false, true}) {
    std::vector<int> order = I;
    if (reversed) std::reverse(order.begin(), order.end());
    auto C = sub_cartan(order);
    for (char t : letters) {
      std::vector<int> dtmp;
      try {
        if (detail::standard_cartan(t, m, dtmp) == C) {
          LeviTruncation out;
          out.datum = build_root_datum(t, m);
          out.index_map.resize(m);
          for (int i = 0; i < m; ++i) out.index_map[i] = order[i] - 1;
          return out;
        }
      } catch (const std::invalid_argument&) {
      }
    }
  }
  throw std::invalid_argument("levi_truncate: subsystem not recognized");
}

}  // namespace repcr
