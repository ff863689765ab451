#pragma once

// Explicit modules with divided-power hyperalgebra action.
//
// Construction pipeline:
//   1. Hand-coded characteristic-0 seed modules (naturals, B_n spin, the
//      7-dimensional G_2 module) carrying simple-root operators only.
//   2. Commutator bootstrap of all root operators and their divided powers,
//      validated against [X_g, X_-g] = H_g on every weight vector.
//   3. Weyl modules as divided-power lattices inside tensor products of
//      fundamental modules over the rationals, reduced mod p.
//   4. Simple modules as quotients by the radical of the contravariant form.
//
// On top of that: weakly maximal vector search, the raising construction,
// and ground-truth complete-reducibility oracles for G and G_1.

#include <algorithm>
#include <bit>
#include <cassert>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "repcr/character.hpp"
#include "repcr/exact.hpp"
#include "repcr/linalg_fp.hpp"
#include "repcr/rootdatum.hpp"
#include "repcr/weights.hpp"

namespace repcr {

/// Dimension cap for the explicit-module oracles (configurable).
inline int& weakmax_dim_cap() {
  static int cap = 400;
  return cap;
}

// ---------------------------------------------------------------------------
// Sparse integer matrices (column form).

/// Sparse integer matrix: column j -> sorted (row, value) pairs.
using ZSMat = std::vector<SparseZVec>;

inline SparseZVec zsmat_apply(const ZSMat& A, const SparseZVec& v) {
  SparseZVec out;
  for (const auto& [j, c] : v) sz_add_scaled(out, A[j], c);
  return out;
}

inline ZSMat zsmat_mul(const ZSMat& A, const ZSMat& B) {
  ZSMat out(B.size());
  for (size_t j = 0; j < B.size(); ++j) out[j] = zsmat_apply(A, B[j]);
  return out;
}

inline ZSMat zsmat_commutator(const ZSMat& A, const ZSMat& B) {
  ZSMat ab = zsmat_mul(A, B);
  ZSMat ba = zsmat_mul(B, A);
  for (size_t j = 0; j < ab.size(); ++j) sz_add_scaled(ab[j], ba[j], Int(-1));
  return ab;
}

/// Sparse matrix over F_p: column j -> (row, value) pairs.
using FpSMat = std::vector<std::vector<std::pair<int, int>>>;

inline void zsmat_div_exact(ZSMat& A, const Int& k) {
  for (auto& col : A)
    for (auto& [i, v] : col) {
      Int q = v / k;
      if (q * k != v) throw std::logic_error("zsmat_div_exact: non-integral");
      v = q;
    }
}

// ---------------------------------------------------------------------------
// Characteristic-0 modules.

/// Lowering-operator word applied to the highest vector, with the resulting
/// coordinates in the constructed basis (provenance for Weyl-module maps).
struct ZRaw {
  std::vector<std::pair<int, int>> ops;  // (simple index 1-based, power)
  std::vector<Int> coords;
};

/// Finite-dimensional module over Q with exact integer root operators.
struct ZModule {
  RootDatum rd;
  int dim = 0;
  int hw = 0;       // highest-weight basis index
  int rbound = 1;   // divided powers stored for r = 1..rbound
  std::vector<Weight> weights;
  // (positive-root index, sign) -> matrices for r = 1..rbound.
  std::map<std::pair<int, int>, std::vector<ZSMat>> act;
  std::function<Rat(int, int)> form;  // contravariant form
  std::vector<ZRaw> raws;             // only for cyclic constructions

  const ZSMat* matrix(int root_idx, int sign, int r) const {
    if (r < 1 || r > rbound) return nullptr;
    auto it = act.find({root_idx, sign});
    if (it == act.end() || r > static_cast<int>(it->second.size()))
      return nullptr;
    return &it->second[r - 1];
  }

  SparseZVec apply(int root_idx, int sign, int r, const SparseZVec& v) const {
    const ZSMat* m = matrix(root_idx, sign, r);
    if (!m) return {};
    return zsmat_apply(*m, v);
  }
};

namespace zdetail {

inline int root_index(const RootDatum& rd, const RootVec& beta) {
  for (size_t i = 0; i < rd.positive_roots.size(); ++i)
    if (rd.positive_roots[i] == beta) return static_cast<int>(i);
  throw std::invalid_argument("root_index: not a positive root");
}

inline RootVec unit_root(int rank, int i /*1-based*/) {
  RootVec v(rank, 0);
  v[i - 1] = 1;
  return v;
}

inline int simple_root_index(const RootDatum& rd, int i /*1-based*/) {
  return root_index(rd, unit_root(rd.rank, i));
}

inline int max_pairing_bound(const RootDatum& rd,
                             const std::vector<Weight>& weights) {
  int r = 1;
  for (const auto& w : weights)
    for (const auto& a : rd.positive_roots) {
      int v = rd.pairing(w, a);
      if (v < 0) v = -v;
      if (v > r) r = v;
    }
  return r;
}

/// Fill in all non-simple root operators (via commutators), all divided
/// powers, and validate the sl_2 relation [X_g, X_-g] = H_g throughout.
inline void bootstrap(ZModule& m) {
  const RootDatum& rd = m.rd;
  m.rbound = max_pairing_bound(rd, m.weights);
  // positive_roots is sorted by height, so summands precede their sums.
  for (size_t g = 0; g < rd.positive_roots.size(); ++g) {
    const RootVec& gamma = rd.positive_roots[g];
    int height = 0;
    for (int x : gamma) height += x;
    if (height > 1) {
      int si = -1;
      RootVec beta;
      for (int i = 1; i <= rd.rank; ++i) {
        if (gamma[i - 1] == 0) continue;
        RootVec b = gamma;
        b[i - 1] -= 1;
        if (rd.is_root(b)) {
          si = i;
          beta = b;
          break;
        }
      }
      if (si < 0) throw std::logic_error("bootstrap: no simple summand");
      int q = 0;
      for (;;) {
        RootVec b = beta;
        b[si - 1] -= q + 1;
        bool zero = true;
        for (int x : b)
          if (x != 0) zero = false;
        if (zero || !rd.is_root(b)) break;
        ++q;
      }
      const int bi = root_index(rd, beta);
      const int ai = simple_root_index(rd, si);
      ZSMat pos = zsmat_commutator(*m.matrix(bi, +1, 1), *m.matrix(ai, +1, 1));
      ZSMat neg = zsmat_commutator(*m.matrix(bi, -1, 1), *m.matrix(ai, -1, 1));
      zsmat_div_exact(pos, Int(q + 1));
      zsmat_div_exact(neg, Int(q + 1));
      for (auto& col : neg)
        for (auto& [i, v] : col) v = -v;
      m.act[{static_cast<int>(g), +1}] = {std::move(pos)};
      m.act[{static_cast<int>(g), -1}] = {std::move(neg)};
    }
    // Divided powers X_{g,r} = X_{g,r-1} * X_{g,1} / r.
    for (int sign : {+1, -1}) {
      auto& mats = m.act[{static_cast<int>(g), sign}];
      for (int r = 2; r <= m.rbound; ++r) {
        ZSMat next = zsmat_mul(mats[r - 2], mats[0]);
        zsmat_div_exact(next, Int(r));
        mats.push_back(std::move(next));
      }
    }
    // Validate [X_g, X_-g] = H_g (diagonal with the coroot pairings).
    ZSMat h = zsmat_commutator(m.act[{static_cast<int>(g), +1}][0],
                               m.act[{static_cast<int>(g), -1}][0]);
    for (int j = 0; j < m.dim; ++j) {
      const Int expect = rd.pairing(m.weights[j], gamma);
      const SparseZVec& col = h[j];
      if (expect == 0) {
        if (!col.empty()) throw std::logic_error("bootstrap: sl2 relation");
      } else if (col.size() != 1 || col[0].first != j ||
                 col[0].second != expect) {
        throw std::logic_error("bootstrap: sl2 relation");
      }
    }
  }
}

/// Contravariant form on a seed module with 1-dimensional weight spaces:
/// diagonal, normalized to 1 on the highest vector, propagated along the
/// simple lowering operators via <f_i u, v> = <u, e_i v>.
inline void compute_seed_form(ZModule& m) {
  const RootDatum& rd = m.rd;
  std::vector<Rat> s(m.dim, 0);
  std::vector<bool> known(m.dim, false);
  s[m.hw] = 1;
  known[m.hw] = true;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int i = 1; i <= rd.rank; ++i) {
      const ZSMat& F = *m.matrix(simple_root_index(rd, i), -1, 1);
      const ZSMat& E = *m.matrix(simple_root_index(rd, i), +1, 1);
      for (int a = 0; a < m.dim; ++a)
        for (const auto& [b, c] : F[a]) {
          // <f e_a, e_b> = c * s_b must equal <e_a, e e_b> = c' * s_a.
          Int cp = 0;
          for (const auto& [x, v] : E[b])
            if (x == a) cp = v;
          if (cp == 0) throw std::logic_error("seed form: degenerate edge");
          if (known[a] && !known[b]) {
            s[b] = s[a] * Rat(cp) / Rat(c);
            known[b] = true;
            progress = true;
          } else if (known[b] && !known[a]) {
            s[a] = s[b] * Rat(c) / Rat(cp);
            known[a] = true;
            progress = true;
          }
        }
    }
  }
  for (bool k : known)
    if (!k) throw std::logic_error("seed form: basis not connected");
  auto diag = std::make_shared<std::vector<Rat>>(std::move(s));
  m.form = [diag](int i, int j) -> Rat {
    return i == j ? (*diag)[i] : Rat(0);
  };
}

// --------------------------------- seeds ----------------------------------

/// Weight (fundamental coordinates) of a Euclidean-coordinate vector for the
/// classical types B/C/D with the standard realization.
inline Weight weight_from_euclid(char type, int rank,
                                 const std::vector<int>& c) {
  Weight w(rank, 0);
  for (int i = 1; i < rank; ++i) w[i - 1] = c[i - 1] - c[i];
  if (type == 'B')
    w[rank - 1] = 2 * c[rank - 1];
  else if (type == 'C')
    w[rank - 1] = c[rank - 1];
  else if (type == 'D')
    w[rank - 1] = c[rank - 2] + c[rank - 1];
  else
    throw std::invalid_argument("weight_from_euclid");
  return w;
}

inline void seed_entry(ZSMat& mat, int from, int to, long long val) {
  sz_add_scaled(mat[from], {{to, Int(1)}}, Int(val));
}

/// Natural modules for the classical types (A: n+1, B: 2n+1, C/D: 2n).
inline ZModule natural_seed(char type, int rank) {
  ZModule m;
  m.rd = build_root_datum(type, rank);
  if (type == 'A') {
    m.dim = rank + 1;
    m.weights.resize(m.dim);
    for (int k = 0; k <= rank; ++k) {
      Weight w(rank, 0);
      if (k < rank) w[k] += 1;
      if (k >= 1) w[k - 1] -= 1;
      m.weights[k] = w;
    }
    for (int i = 1; i <= rank; ++i) {
      ZSMat e(m.dim), f(m.dim);
      seed_entry(e, i, i - 1, 1);
      seed_entry(f, i - 1, i, 1);
      m.act[{zdetail::simple_root_index(m.rd, i), +1}] = {std::move(e)};
      m.act[{zdetail::simple_root_index(m.rd, i), -1}] = {std::move(f)};
    }
  } else if (type == 'B' || type == 'C' || type == 'D') {
    const int n = rank;
    const bool has_zero = (type == 'B');
    m.dim = 2 * n + (has_zero ? 1 : 0);
    // Index layout: 0..n-1 = v_1..v_n, [n = v_0 for B], then v_-1..v_-n.
    const int neg0 = has_zero ? n + 1 : n;  // index of v_-1
    auto pos = [&](int k) { return k - 1; };
    auto neg = [&](int k) { return neg0 + k - 1; };
    const int zero = n;  // only valid for B
    m.weights.resize(m.dim);
    for (int k = 1; k <= n; ++k) {
      std::vector<int> c(n, 0);
      c[k - 1] = 1;
      m.weights[pos(k)] = weight_from_euclid(type, n, c);
      c[k - 1] = -1;
      m.weights[neg(k)] = weight_from_euclid(type, n, c);
    }
    if (has_zero) m.weights[zero] = zero_weight(n);
    for (int i = 1; i < n; ++i) {
      ZSMat e(m.dim), f(m.dim);
      seed_entry(e, pos(i + 1), pos(i), 1);
      seed_entry(e, neg(i), neg(i + 1), -1);
      seed_entry(f, pos(i), pos(i + 1), 1);
      seed_entry(f, neg(i + 1), neg(i), -1);
      m.act[{zdetail::simple_root_index(m.rd, i), +1}] = {std::move(e)};
      m.act[{zdetail::simple_root_index(m.rd, i), -1}] = {std::move(f)};
    }
    ZSMat e(m.dim), f(m.dim);
    if (type == 'B') {
      seed_entry(e, zero, pos(n), 2);
      seed_entry(e, neg(n), zero, 1);
      seed_entry(f, pos(n), zero, 1);
      seed_entry(f, zero, neg(n), 2);
    } else if (type == 'C') {
      seed_entry(e, neg(n), pos(n), 1);
      seed_entry(f, pos(n), neg(n), 1);
    } else {  // D
      seed_entry(e, neg(n), pos(n - 1), 1);
      seed_entry(e, neg(n - 1), pos(n), -1);
      seed_entry(f, pos(n - 1), neg(n), 1);
      seed_entry(f, pos(n), neg(n - 1), -1);
    }
    m.act[{zdetail::simple_root_index(m.rd, n), +1}] = {std::move(e)};
    m.act[{zdetail::simple_root_index(m.rd, n), -1}] = {std::move(f)};
  } else {
    throw std::invalid_argument("natural_seed: unsupported type");
  }
  m.hw = 0;
  bootstrap(m);
  compute_seed_form(m);
  return m;
}

/// The 2^n-dimensional spin module of B_n on the subset-indexed basis
/// (bit k-1 of the index set <=> the k-th sign is minus).
inline ZModule spin_seed(int rank) {
  ZModule m;
  m.rd = build_root_datum('B', rank);
  const int n = rank;
  m.dim = 1 << n;
  m.weights.resize(m.dim);
  for (int mask = 0; mask < m.dim; ++mask) {
    auto sgn = [&](int k) { return (mask >> (k - 1)) & 1 ? -1 : 1; };
    Weight w(n, 0);
    for (int i = 1; i < n; ++i) w[i - 1] = (sgn(i) - sgn(i + 1)) / 2;
    w[n - 1] = sgn(n);
    m.weights[mask] = w;
  }
  for (int i = 1; i < n; ++i) {
    ZSMat e(m.dim), f(m.dim);
    for (int mask = 0; mask < m.dim; ++mask) {
      const bool in_i = (mask >> (i - 1)) & 1, in_i1 = (mask >> i) & 1;
      if (in_i && !in_i1)  // move the minus sign from i to i+1
        seed_entry(e, mask, (mask & ~(1 << (i - 1))) | (1 << i), 1);
      if (!in_i && in_i1)
        seed_entry(f, mask, (mask | (1 << (i - 1))) & ~(1 << i), 1);
    }
    m.act[{zdetail::simple_root_index(m.rd, i), +1}] = {std::move(e)};
    m.act[{zdetail::simple_root_index(m.rd, i), -1}] = {std::move(f)};
  }
  ZSMat e(m.dim), f(m.dim);
  for (int mask = 0; mask < m.dim; ++mask) {
    if ((mask >> (n - 1)) & 1)
      seed_entry(e, mask, mask & ~(1 << (n - 1)), 1);
    else
      seed_entry(f, mask, mask | (1 << (n - 1)), 1);
  }
  m.act[{zdetail::simple_root_index(m.rd, n), +1}] = {std::move(e)};
  m.act[{zdetail::simple_root_index(m.rd, n), -1}] = {std::move(f)};
  m.hw = 0;
  bootstrap(m);
  compute_seed_form(m);
  return m;
}

/// The 7-dimensional G_2 module with highest weight w_1.
inline ZModule g2_seven_seed() {
  ZModule m;
  m.rd = build_root_datum('G', 2);
  m.dim = 7;
  m.weights = {{1, 0}, {-1, 1}, {2, -1}, {0, 0}, {-2, 1}, {1, -1}, {-1, 0}};
  ZSMat e1(7), f1(7), e2(7), f2(7);
  seed_entry(f1, 0, 1, 1);
  seed_entry(f1, 2, 3, 1);
  seed_entry(f1, 3, 4, 2);
  seed_entry(f1, 5, 6, 1);
  seed_entry(e1, 1, 0, 1);
  seed_entry(e1, 3, 2, 2);
  seed_entry(e1, 4, 3, 1);
  seed_entry(e1, 6, 5, 1);
  seed_entry(f2, 1, 2, 1);
  seed_entry(f2, 4, 5, 1);
  seed_entry(e2, 2, 1, 1);
  seed_entry(e2, 5, 4, 1);
  m.act[{zdetail::simple_root_index(m.rd, 1), +1}] = {std::move(e1)};
  m.act[{zdetail::simple_root_index(m.rd, 1), -1}] = {std::move(f1)};
  m.act[{zdetail::simple_root_index(m.rd, 2), +1}] = {std::move(e2)};
  m.act[{zdetail::simple_root_index(m.rd, 2), -1}] = {std::move(f2)};
  m.hw = 0;
  bootstrap(m);
  compute_seed_form(m);
  return m;
}

inline ZModule trivial_z(const RootDatum& rd) {
  ZModule m;
  m.rd = rd;
  m.dim = 1;
  m.hw = 0;
  m.weights = {zero_weight(rd.rank)};
  for (size_t g = 0; g < rd.positive_roots.size(); ++g)
    for (int sign : {+1, -1})
      m.act[{static_cast<int>(g), sign}] = {ZSMat(1)};
  m.form = [](int, int) { return Rat(1); };
  return m;
}

// -------------------------------- tensor ----------------------------------

inline ZModule tensor_z(const ZModule& A, const ZModule& B) {
  if (A.rd.type_letter != B.rd.type_letter || A.rd.rank != B.rd.rank)
    throw std::invalid_argument("tensor_z: datum mismatch");
  ZModule m;
  m.rd = A.rd;
  m.dim = A.dim * B.dim;
  m.hw = A.hw * B.dim + B.hw;
  m.weights.resize(m.dim);
  const int dB = B.dim;
  for (int a = 0; a < A.dim; ++a)
    for (int b = 0; b < B.dim; ++b)
      m.weights[a * dB + b] = add(A.weights[a], B.weights[b]);
  m.rbound = zdetail::max_pairing_bound(m.rd, m.weights);
  for (size_t g = 0; g < m.rd.positive_roots.size(); ++g)
    for (int sign : {+1, -1}) {
      std::vector<ZSMat> mats;
      for (int r = 1; r <= m.rbound; ++r) {
        ZSMat mat(m.dim);
        for (int a = 0; a < A.dim; ++a)
          for (int b = 0; b < B.dim; ++b) {
            SparseZVec& col = mat[a * dB + b];
            for (int s = 0; s <= r; ++s) {
              // Comultiplication: X_{g,r} = sum_s X_{g,s} (x) X_{g,r-s}.
              if (s == 0) {
                const ZSMat* Br = B.matrix(static_cast<int>(g), sign, r);
                if (Br)
                  for (const auto& [i, v] : (*Br)[b])
                    sz_add_scaled(col, {{a * dB + i, Int(1)}}, v);
              } else if (s == r) {
                const ZSMat* Ar = A.matrix(static_cast<int>(g), sign, r);
                if (Ar)
                  for (const auto& [i, v] : (*Ar)[a])
                    sz_add_scaled(col, {{i * dB + b, Int(1)}}, v);
              } else {
                const ZSMat* As = A.matrix(static_cast<int>(g), sign, s);
                const ZSMat* Bs = B.matrix(static_cast<int>(g), sign, r - s);
                if (As && Bs)
                  for (const auto& [i1, v1] : (*As)[a])
                    for (const auto& [i2, v2] : (*Bs)[b])
                      sz_add_scaled(col, {{i1 * dB + i2, Int(1)}}, v1 * v2);
              }
            }
          }
        mats.push_back(std::move(mat));
      }
      m.act[{static_cast<int>(g), sign}] = std::move(mats);
    }
  auto fa = A.form, fb = B.form;
  m.form = [fa, fb, dB](int x, int y) -> Rat {
    return fa(x / dB, y / dB) * fb(x % dB, y % dB);
  };
  return m;
}

// --------------------------- cyclic construction ---------------------------

/// The irreducible characteristic-0 module V(lambda) realized as the cyclic
/// submodule of `amb` generated by its unique maximal vector of weight
/// lambda, on the divided-power lattice basis.  Records lowering-word
/// provenance and the contravariant Gram matrix (highest vector norm 1).
inline ZModule cyclic_z(const ZModule& amb, const Weight& lambda) {
  const RootDatum& rd = amb.rd;
  const Character ch = weyl_character(rd, lambda);

  std::map<Weight, std::vector<int>> amb_blocks;
  for (int i = 0; i < amb.dim; ++i) amb_blocks[amb.weights[i]].push_back(i);

  // Maximal vector over Q: joint kernel of the simple raising operators on
  // the lambda weight space (first powers suffice in characteristic 0).
  auto hw_it = amb_blocks.find(lambda);
  if (hw_it == amb_blocks.end())
    throw std::invalid_argument("cyclic_z: lambda not an ambient weight");
  const std::vector<int>& hw_block = hw_it->second;
  std::map<int, int> hw_pos;
  for (size_t k = 0; k < hw_block.size(); ++k) hw_pos[hw_block[k]] = k;
  RatMat sys;
  for (int i = 1; i <= rd.rank; ++i) {
    const ZSMat& E = *amb.matrix(zdetail::simple_root_index(rd, i), +1, 1);
    std::map<int, std::vector<Rat>> rows;  // target ambient index -> row
    for (size_t k = 0; k < hw_block.size(); ++k)
      for (const auto& [tgt, v] : E[hw_block[k]]) {
        auto& row = rows[tgt];
        row.resize(hw_block.size(), 0);
        row[k] = Rat(v);
      }
    for (auto& [tgt, row] : rows) {
      row.resize(hw_block.size(), 0);
      sys.push_back(std::move(row));
    }
  }
  if (sys.empty()) sys.push_back(std::vector<Rat>(hw_block.size(), 0));
  auto kernel = rat_nullspace_integer(sys);
  if (kernel.size() != 1)
    throw std::logic_error("cyclic_z: highest component not unique");
  SparseZVec v0;
  for (size_t k = 0; k < hw_block.size(); ++k)
    if (kernel[0][k] != 0) v0.emplace_back(hw_block[k], kernel[0][k]);

  // Breadth-first divided-power lattice generation.
  std::map<Weight, ZLattice> lattice;
  struct Item {
    Weight w;
    SparseZVec vec;
    std::vector<std::pair<int, int>> ops;
  };
  std::vector<Item> queue;
  lattice[lambda].insert(v0);
  queue.push_back({lambda, v0, {}});
  for (size_t q = 0; q < queue.size(); ++q) {
    const Item cur = queue[q];  // copy: queue may reallocate
    for (int i = 1; i <= rd.rank; ++i) {
      const Weight alpha_w = rd.simple_root_weight(i - 1);
      Weight tgt = cur.w;
      for (int r = 1; r <= amb.rbound; ++r) {
        tgt = sub(tgt, alpha_w);
        if (ch.find(tgt) == ch.end()) break;
        SparseZVec img =
            amb.apply(zdetail::simple_root_index(rd, i), -1, r, cur.vec);
        if (img.empty()) continue;
        if (lattice[tgt].insert(img)) {
          auto ops = cur.ops;
          ops.emplace_back(i, r);
          queue.push_back({tgt, std::move(img), std::move(ops)});
        }
      }
    }
  }

  ZModule m;
  m.rd = rd;
  std::map<Weight, int> offset;
  int total = 0;
  for (const auto& [w, lat] : lattice) {
    offset[w] = total;
    total += static_cast<int>(lat.rank());
    for (size_t k = 0; k < lat.rank(); ++k) m.weights.push_back(w);
  }
  m.dim = total;
  if (m.dim != weyl_dim(rd, lambda))
    throw std::logic_error("cyclic_z: dimension mismatch with Weyl formula");
  if (lattice[lambda].rank() != 1)
    throw std::logic_error("cyclic_z: highest weight space not a line");
  m.hw = offset[lambda];
  m.rbound = zdetail::max_pairing_bound(rd, m.weights);

  auto express_global = [&](const Weight& w,
                            const SparseZVec& vec) -> std::vector<Int> {
    auto it = lattice.find(w);
    if (it == lattice.end())
      throw std::logic_error("cyclic_z: vector outside the lattice support");
    auto coords = it->second.express(vec);
    if (!coords) throw std::logic_error("cyclic_z: vector outside the lattice");
    std::vector<Int> full(m.dim, 0);
    for (size_t k = 0; k < coords->size(); ++k)
      full[offset[w] + static_cast<int>(k)] = (*coords)[k];
    return full;
  };

  // Action matrices on the lattice basis.
  for (size_t g = 0; g < rd.positive_roots.size(); ++g) {
    const Weight gamma_w = rd.root_to_weight(rd.positive_roots[g]);
    for (int sign : {+1, -1}) {
      std::vector<ZSMat> mats;
      for (int r = 1; r <= m.rbound; ++r) {
        ZSMat mat(m.dim);
        for (const auto& [w, lat] : lattice) {
          Weight tgt = w;
          for (int rr = 0; rr < r; ++rr)
            tgt = sign > 0 ? add(tgt, gamma_w) : sub(tgt, gamma_w);
          const bool in_support = ch.find(tgt) != ch.end();
          for (size_t k = 0; k < lat.rank(); ++k) {
            SparseZVec img =
                amb.apply(static_cast<int>(g), sign, r, lat.rows()[k]);
            if (img.empty()) continue;
            if (!in_support)
              throw std::logic_error("cyclic_z: image outside the character");
            auto full = express_global(tgt, img);
            SparseZVec& col = mat[offset.at(w) + static_cast<int>(k)];
            for (int x = 0; x < m.dim; ++x)
              if (full[x] != 0) col.emplace_back(x, full[x]);
          }
        }
        mats.push_back(std::move(mat));
      }
      m.act[{static_cast<int>(g), sign}] = std::move(mats);
    }
  }

  // Contravariant Gram matrix, normalized so the highest vector has norm 1.
  Rat norm0 = 0;
  for (const auto& [x, cx] : v0)
    for (const auto& [y, cy] : v0) norm0 += Rat(cx) * Rat(cy) * amb.form(x, y);
  if (norm0 == 0) throw std::logic_error("cyclic_z: degenerate highest vector");
  auto gram = std::make_shared<std::vector<std::vector<Int>>>(
      m.dim, std::vector<Int>(m.dim, 0));
  for (const auto& [w, lat] : lattice) {
    const int off = offset.at(w);
    for (size_t a = 0; a < lat.rank(); ++a)
      for (size_t b = a; b < lat.rank(); ++b) {
        Rat val = 0;
        for (const auto& [x, cx] : lat.rows()[a])
          for (const auto& [y, cy] : lat.rows()[b])
            val += Rat(cx) * Rat(cy) * amb.form(x, y);
        val /= norm0;
        if (boost::multiprecision::denominator(val) != 1)
          throw std::logic_error("cyclic_z: non-integral Gram entry");
        (*gram)[off + a][off + b] = boost::multiprecision::numerator(val);
        (*gram)[off + b][off + a] = (*gram)[off + a][off + b];
      }
  }
  m.form = [gram](int i, int j) -> Rat { return Rat((*gram)[i][j]); };

  // Provenance: lowering words spanning the lattice.
  m.raws.push_back({{}, express_global(lambda, v0)});
  for (size_t q = 1; q < queue.size(); ++q)
    m.raws.push_back(
        {queue[q].ops, express_global(queue[q].w, queue[q].vec)});
  return m;
}

// ------------------------- fundamental modules -----------------------------

inline std::shared_ptr<const ZModule> fundamental_z(const RootDatum& rd,
                                                    int i /*1-based*/);

/// Ambient tensor product of fundamental modules for a dominant weight.
inline ZModule ambient_for(const RootDatum& rd, const Weight& lambda) {
  std::shared_ptr<const ZModule> acc;
  ZModule result;
  bool have = false;
  for (int i = 1; i <= rd.rank; ++i)
    for (int c = 0; c < lambda[i - 1]; ++c) {
      auto f = fundamental_z(rd, i);
      if (!have) {
        result = *f;
        have = true;
      } else {
        result = tensor_z(result, *f);
      }
    }
  if (!have) return trivial_z(rd);
  return result;
}

inline ZModule weyl_z(const RootDatum& rd, const Weight& lambda) {
  if (!rd.is_dominant(lambda))
    throw std::invalid_argument("weyl_z: non-dominant");
  bool zero = true;
  for (int x : lambda)
    if (x != 0) zero = false;
  if (zero) {
    ZModule m = trivial_z(rd);
    m.raws.push_back({{}, {Int(1)}});
    return m;
  }
  return cyclic_z(ambient_for(rd, lambda), lambda);
}

inline std::shared_ptr<const ZModule> fundamental_z(const RootDatum& rd,
                                                    int i) {
  static std::map<std::string, std::shared_ptr<const ZModule>> cache;
  static std::mutex mtx;
  const std::string key =
      detail::datum_key(rd) + ":f" + std::to_string(i);
  {
    std::lock_guard<std::mutex> lk(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::shared_ptr<const ZModule> mod;
  const char t = rd.type_letter;
  if (i < 1 || i > rd.rank) throw std::invalid_argument("fundamental_z: index");
  if (i == 1 && t != 'G') {
    mod = std::make_shared<ZModule>(natural_seed(t, rd.rank));
  } else if (t == 'B' && i == rd.rank) {
    mod = std::make_shared<ZModule>(spin_seed(rd.rank));
  } else if (t == 'G' && i == 1) {
    mod = std::make_shared<ZModule>(g2_seven_seed());
  } else if (t == 'A' || t == 'C' || (t == 'B' && i < rd.rank) ||
             (t == 'D' && i <= rd.rank - 2)) {
    // V(w_i) is the cyclic submodule of V(w_{i-1}) (x) V generated by the
    // unique maximal vector of weight w_i; iterating keeps the ambient
    // polynomial in the rank (nat^{(x)i} would be exponential).
    auto prev = fundamental_z(rd, i - 1);
    ZModule nat = natural_seed(t, rd.rank);
    mod = std::make_shared<ZModule>(
        cyclic_z(tensor_z(*prev, nat), fundamental_weight(rd.rank, i)));
  } else if (t == 'G' && i == 2) {
    ZModule seven = g2_seven_seed();
    mod = std::make_shared<ZModule>(
        cyclic_z(tensor_z(seven, seven), fundamental_weight(2, 2)));
  } else {
    throw std::invalid_argument("fundamental_z: unsupported fundamental " +
                                std::string(1, t) + std::to_string(rd.rank) +
                                " w" + std::to_string(i));
  }
  std::lock_guard<std::mutex> lk(mtx);
  cache.emplace(key, mod);
  return mod;
}

/// p = 2 fast path for weyl_block_ranks: weight blocks as GF(2) bit rows
/// over per-block local ambient bases.  Same cyclic-module argument as the
/// generic path; the bit representation keeps the large type-A instances
/// (hundreds of thousands of lattice dimensions) within desk scale.
template <class Allowed, class RatMod>
std::map<Weight, int> block_ranks_gf2(
    const RootDatum& rd, const Weight& lambda,
    const std::vector<std::shared_ptr<const ZModule>>& factors,
    const Character& ch, Allowed&& allowed, RatMod&& rat_mod,
    const std::vector<Weight>& targets) {
  const int k = static_cast<int>(factors.size());
  using BitRow = std::vector<std::uint64_t>;

  struct Block {
    std::map<std::vector<int>, int> dict;  // multi-index -> local id
    std::vector<std::vector<int>> basis;
    std::map<int, BitRow> rows;  // pivot (lowest set bit) -> row
  };
  std::map<Weight, Block> blocks;
  auto local_id = [](Block& B, const std::vector<int>& mi) -> int {
    auto [it, inserted] =
        B.dict.emplace(mi, static_cast<int>(B.basis.size()));
    if (inserted) B.basis.push_back(mi);
    return it->second;
  };
  auto set_bit = [](BitRow& r, int i) {
    const size_t word = static_cast<size_t>(i) >> 6;
    if (word >= r.size()) r.resize(word + 1, 0);
    r[word] ^= std::uint64_t(1) << (i & 63);
  };
  auto lowest_bit = [](const BitRow& r) -> int {
    for (size_t w = 0; w < r.size(); ++w)
      if (r[w]) return static_cast<int>(w * 64) + std::countr_zero(r[w]);
    return -1;
  };
  auto xor_into = [](BitRow& a, const BitRow& b) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (size_t w = 0; w < b.size(); ++w) a[w] ^= b[w];
  };

  // Factor lowering matrices reduced mod 2.
  std::map<std::tuple<const ZModule*, int, int>, FpSMat> fp_act;
  auto factor_mat = [&](int j, int i, int r) -> const FpSMat* {
    const ZModule* f = factors[j].get();
    const int g = simple_root_index(rd, i);
    const ZSMat* z = f->matrix(g, -1, r);
    if (!z) return nullptr;
    auto key = std::make_tuple(f, i, r);
    auto it = fp_act.find(key);
    if (it == fp_act.end()) {
      FpSMat m(z->size());
      for (size_t col = 0; col < z->size(); ++col)
        for (const auto& [row, v] : (*z)[col])
          if (v % 2 != 0) m[col].emplace_back(row, 1);
      it = fp_act.emplace(std::move(key), std::move(m)).first;
    }
    return &it->second;
  };

  int rglob = 0;
  for (const auto& f : factors) rglob += f->rbound;

  // Toggle the images of one source basis vector under X_{-alpha_i}^{(r)}
  // into the target accumulator (coefficients are parities).
  std::function<void(int, int, size_t, std::vector<int>&, Block&, BitRow&)>
      comult = [&](int i, int rem, size_t j, std::vector<int>& cur, Block& tgt,
                   BitRow& acc) {
        if (j == factors.size()) {
          if (rem == 0) set_bit(acc, local_id(tgt, cur));
          return;
        }
        comult(i, rem, j + 1, cur, tgt, acc);  // r_j = 0
        const int save = cur[j];
        for (int s = 1; s <= rem; ++s) {
          const FpSMat* mat = factor_mat(static_cast<int>(j), i, s);
          if (!mat) break;
          for (const auto& [idx, v] : (*mat)[save]) {
            cur[j] = idx;
            comult(i, rem - s, j + 1, cur, tgt, acc);
          }
          cur[j] = save;
        }
      };

  // Highest vector: pure tensor of the factor highest vectors.
  std::vector<int> top(k);
  for (int j = 0; j < k; ++j) top[j] = factors[j]->hw;
  Block& topB = blocks[lambda];
  BitRow v0;
  set_bit(v0, local_id(topB, top));
  topB.rows.emplace(0, v0);

  // Breadth-first generation restricted to the allowed cone.  Queue items
  // reference stored echelon rows (never modified after insertion).
  std::vector<std::pair<Weight, int>> queue{{lambda, 0}};
  for (size_t q = 0; q < queue.size(); ++q) {
    const auto [w, piv] = queue[q];
    for (int i = 1; i <= rd.rank; ++i) {
      const Weight alpha_w = rd.simple_root_weight(i - 1);
      Weight tgt = w;
      for (int r = 1; r <= rglob; ++r) {
        tgt = sub(tgt, alpha_w);
        // Both conditions are monotone along the alpha_i string.
        if (!allowed(tgt)) break;
        Block& srcB = blocks.at(w);
        Block& tgtB = blocks[tgt];
        const BitRow& src = srcB.rows.at(piv);
        BitRow img;
        for (size_t word = 0; word < src.size(); ++word) {
          std::uint64_t bits = src[word];
          while (bits) {
            const int x =
                static_cast<int>(word * 64) + std::countr_zero(bits);
            bits &= bits - 1;
            std::vector<int> mi = srcB.basis[x];
            comult(i, r, 0, mi, tgtB, img);
          }
        }
        // Echelon insert over GF(2).
        for (;;) {
          const int lead = lowest_bit(img);
          if (lead < 0) break;
          auto it = tgtB.rows.find(lead);
          if (it == tgtB.rows.end()) {
            tgtB.rows.emplace(lead, std::move(img));
            queue.emplace_back(tgt, lead);
            break;
          }
          xor_into(img, it->second);
        }
      }
    }
  }

  {
    int norm0 = 1;
    for (int j = 0; j < k; ++j)
      norm0 = (norm0 * rat_mod(factors[j]->form(top[j], top[j]))) & 1;
    if (norm0 == 0)
      throw std::invalid_argument("weyl_block_ranks: degenerate top norm");
  }

  std::map<Weight, int> out;
  for (const auto& nu : targets) {
    auto bit = blocks.find(nu);
    if (bit == blocks.end()) {
      out[nu] = 0;
      continue;
    }
    Block& B = bit->second;
    std::vector<const BitRow*> rows;
    for (const auto& [piv, row] : B.rows) rows.push_back(&row);
    const size_t b = rows.size();
    if (static_cast<long long>(b) > ch.at(nu))
      throw std::logic_error("weyl_block_ranks: block exceeds chi");
    const size_t n = B.basis.size();
    const size_t words = (n + 63) / 64;

    // Group local columns by the tuple of factor weights; the form pairs
    // only matching tuples.  With minuscule factors every group is a
    // singleton and the form is diagonal.
    std::map<std::vector<int>, std::vector<int>> groups;
    for (size_t x = 0; x < n; ++x) {
      std::vector<int> key;
      for (int j = 0; j < k; ++j) {
        const Weight& fw = factors[j]->weights[B.basis[x][j]];
        key.insert(key.end(), fw.begin(), fw.end());
      }
      groups[key].push_back(static_cast<int>(x));
    }
    auto get_bit = [&](const BitRow& r, int i) -> int {
      const size_t word = static_cast<size_t>(i) >> 6;
      return word < r.size() ? static_cast<int>((r[word] >> (i & 63)) & 1)
                             : 0;
    };
    auto form_val = [&](int x, int y) -> int {
      int val = 1;
      for (int j = 0; j < k; ++j) {
        val &= rat_mod(factors[j]->form(B.basis[x][j], B.basis[y][j]));
        if (!val) break;
      }
      return val;
    };

    // u_a = F r_a, then G[a][b] = <u_a, r_b> over GF(2).
    std::vector<BitRow> u(b, BitRow(words, 0));
    for (const auto& [key, grp] : groups) {
      if (grp.size() == 1) {
        const int x = grp[0];
        if (!form_val(x, x)) continue;
        for (size_t a = 0; a < b; ++a)
          if (get_bit(*rows[a], x)) set_bit(u[a], x);
        continue;
      }
      const size_t m = grp.size();
      std::vector<std::vector<int>> F(m, std::vector<int>(m, 0));
      for (size_t x = 0; x < m; ++x)
        for (size_t y = x; y < m; ++y) F[x][y] = F[y][x] = form_val(grp[x],
                                                                    grp[y]);
      for (size_t a = 0; a < b; ++a)
        for (size_t y = 0; y < m; ++y) {
          int s = 0;
          for (size_t x = 0; x < m; ++x)
            s ^= F[x][y] & get_bit(*rows[a], grp[x]);
          if (s) set_bit(u[a], grp[y]);
        }
    }
    std::vector<BitRow> G(b, BitRow((b + 63) / 64, 0));
    for (size_t a = 0; a < b; ++a) {
      const BitRow& ua = u[a];
      for (size_t c = a; c < b; ++c) {
        const BitRow& rc = *rows[c];
        const size_t lim = std::min(ua.size(), rc.size());
        int parity = 0;
        for (size_t word = 0; word < lim; ++word)
          parity ^= std::popcount(ua[word] & rc[word]) & 1;
        if (parity) {
          set_bit(G[a], static_cast<int>(c));
          if (c != a) set_bit(G[c], static_cast<int>(a));
        }
      }
    }
    // GF(2) rank of G.
    int rank = 0;
    std::map<int, int> pivot_row;  // pivot column -> row index
    for (size_t a = 0; a < b; ++a) {
      BitRow v = std::move(G[a]);
      for (;;) {
        int lead = -1;
        for (size_t w = 0; w < v.size(); ++w)
          if (v[w]) {
            lead = static_cast<int>(w * 64) + std::countr_zero(v[w]);
            break;
          }
        if (lead < 0) break;
        auto it = pivot_row.find(lead);
        if (it == pivot_row.end()) {
          pivot_row.emplace(lead, static_cast<int>(a));
          G[a] = std::move(v);
          ++rank;
          break;
        }
        xor_into(v, G[it->second]);
      }
    }
    out[nu] = rank;
  }
  return out;
}

}  // namespace zdetail

// ---------------------------------------------------------------------------
// Targeted block ranks of the contravariant form on a Weyl module.

/// dim L(lambda)_nu for each target weight nu, computed as the F_p rank of
/// the contravariant Gram form on the nu weight block of the cyclic
/// highest-weight module generated mod p inside the ambient tensor product
/// of fundamental modules.  Any cyclic module M = U v0 with a contravariant
/// form and <v0, v0> != 0 has form radical equal to its maximal submodule,
/// so the blockwise form rank is dim L(lambda)_nu even when M is a proper
/// quotient of Delta(lambda).
///
/// Generation is restricted to ambient weights w with w >= nu for some
/// target (every simple-lowering chain from lambda into the nu block stays
/// inside that cone), so only a small dominance interval near lambda is
/// ever materialized.  Throws std::invalid_argument when a fundamental
/// module is unsupported or the interval exceeds the size cap.
inline std::map<Weight, int> weyl_block_ranks(const RootDatum& rd,
                                              const Weight& lambda, int p,
                                              const std::vector<Weight>& targets) {
  if (!rd.is_dominant(lambda))
    throw std::invalid_argument("weyl_block_ranks: non-dominant");
  if (targets.empty()) return {};

  // Fundamental factors of the ambient product, one per unit of lambda.
  std::vector<std::shared_ptr<const ZModule>> factors;
  for (int i = 1; i <= rd.rank; ++i)
    for (int c = 0; c < lambda[i - 1]; ++c)
      factors.push_back(zdetail::fundamental_z(rd, i));
  const int k = static_cast<int>(factors.size());
  if (k == 0) throw std::invalid_argument("weyl_block_ranks: zero weight");

  const Character ch = weyl_character(rd, lambda);
  for (const auto& nu : targets)
    if (ch.find(nu) == ch.end())
      throw std::invalid_argument("weyl_block_ranks: target outside chi");

  // Ambient weights allowed during generation: in the support of chi(lambda)
  // and >= some target in the root order.
  auto allowed = [&](const Weight& w) -> bool {
    if (ch.find(w) == ch.end()) return false;
    for (const auto& nu : targets) {
      auto rc = rd.root_coords(sub(w, nu));
      if (!rc) continue;
      bool ok = true;
      for (int x : *rc)
        if (x < 0) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    return false;
  };

  // Size guard: total module dimension over the allowed interval.
  {
    long long interval = 0;
    for (const auto& [w, m] : ch)
      if (allowed(w)) interval += m;
    if (interval > (p == 2 ? 400000 : 150000))
      throw std::invalid_argument("weyl_block_ranks: interval cap");
  }

  auto rat_mod = [&](const Rat& v) -> int {
    const Int num = boost::multiprecision::numerator(v) % p;
    const Int den = boost::multiprecision::denominator(v) % p;
    const int d = ((static_cast<int>(den) % p) + p) % p;
    if (d == 0)
      throw std::invalid_argument("weyl_block_ranks: p in form denominator");
    const int n = ((static_cast<int>(num) % p) + p) % p;
    return fp_norm(1LL * n * fp_inv(d, p), p);
  };

  if (p == 2) return zdetail::block_ranks_gf2(rd, lambda, factors, ch, allowed,
                                              rat_mod, targets);

  // Lazy multi-index basis of the ambient tensor product: ids are assigned
  // on first touch, so only the allowed interval is materialized.
  std::map<std::vector<int>, int> dict;
  std::vector<std::vector<int>> basis;  // id -> multi-index
  auto get_id = [&](const std::vector<int>& mi) -> int {
    auto [it, inserted] = dict.emplace(mi, static_cast<int>(basis.size()));
    if (inserted) basis.push_back(mi);
    return it->second;
  };

  int rglob = 0;
  for (const auto& f : factors) rglob += f->rbound;

  // Factor lowering matrices reduced mod p (shared fundamentals reduced
  // once).  Key: (module, simple index, r).
  std::map<std::tuple<const ZModule*, int, int>, FpSMat> fp_act;
  auto factor_mat = [&](int j, int i, int r) -> const FpSMat* {
    const ZModule* f = factors[j].get();
    const int g = zdetail::simple_root_index(rd, i);
    auto key = std::make_tuple(f, i, r);
    auto it = fp_act.find(key);
    if (it == fp_act.end()) {
      const ZSMat* z = f->matrix(g, -1, r);
      if (!z) return nullptr;
      FpSMat m(z->size());
      for (size_t col = 0; col < z->size(); ++col)
        for (const auto& [row, v] : (*z)[col]) {
          const int e = static_cast<int>(v % p);
          const int red = ((e % p) + p) % p;
          if (red != 0) m[col].emplace_back(row, red);
        }
      it = fp_act.emplace(std::move(key), std::move(m)).first;
    }
    return it->second.empty() && f->matrix(g, -1, r) == nullptr ? nullptr
                                                                : &it->second;
  };

  using SFpVec = std::vector<std::pair<int, int>>;  // sorted (id, value)

  // Delta(X_{-alpha_i}^{(r)}) = sum over compositions r_1+..+r_k = r of the
  // per-factor divided powers; factor matrices past their bound are zero.
  std::function<void(int, int, size_t, std::vector<int>&, int,
                     std::map<std::vector<int>, int>&)>
      comult = [&](int i, int rem, size_t j, std::vector<int>& cur, int coeff,
                   std::map<std::vector<int>, int>& out) {
        if (j == factors.size()) {
          if (rem == 0) {
            int& slot = out[cur];
            slot = fp_norm(slot + coeff, p);
            if (slot == 0) out.erase(cur);
          }
          return;
        }
        comult(i, rem, j + 1, cur, coeff, out);  // r_j = 0
        const int save = cur[j];
        for (int s = 1; s <= rem; ++s) {
          const FpSMat* mat = factor_mat(static_cast<int>(j), i, s);
          if (!mat) break;
          for (const auto& [idx, v] : (*mat)[save]) {
            cur[j] = idx;
            comult(i, rem - s, j + 1, cur, fp_norm(1LL * coeff * v, p), out);
          }
          cur[j] = save;
        }
      };

  auto apply_lowering = [&](int i /*1-based simple*/, int r,
                            const SFpVec& v) -> SFpVec {
    std::map<std::vector<int>, int> acc;
    for (const auto& [id, c] : v) {
      std::vector<int> mi = basis[id];
      comult(i, r, 0, mi, c, acc);
    }
    SFpVec out;
    for (const auto& [mi, c] : acc) out.emplace_back(get_id(mi), c);
    std::sort(out.begin(), out.end());
    return out;
  };

  // Per-weight row space in echelon form over F_p: pivot id -> row with
  // leading coefficient 1.
  struct FpSpan {
    std::map<int, SFpVec> rows;
    int p;
    bool insert(SFpVec v) {
      while (!v.empty()) {
        const int piv = v.front().first;
        auto it = rows.find(piv);
        if (it == rows.end()) {
          const int inv = fp_inv(v.front().second, p);
          for (auto& [id, c] : v) c = fp_norm(1LL * c * inv, p);
          rows.emplace(piv, std::move(v));
          return true;
        }
        const int c0 = v.front().second;
        SFpVec out;
        out.reserve(v.size() + it->second.size());
        size_t a = 0, b = 0;
        const SFpVec& w = it->second;
        while (a < v.size() || b < w.size()) {
          if (b == w.size() || (a < v.size() && v[a].first < w[b].first)) {
            out.push_back(v[a++]);
          } else if (a == v.size() || w[b].first < v[a].first) {
            out.emplace_back(w[b].first, fp_norm(-1LL * c0 * w[b].second, p));
            ++b;
          } else {
            const int val = fp_norm(v[a].second - 1LL * c0 * w[b].second, p);
            if (val != 0) out.emplace_back(v[a].first, val);
            ++a;
            ++b;
          }
        }
        v = std::move(out);
      }
      return false;
    }
  };

  // Highest vector: the lambda weight space of the ambient product is the
  // line through the pure tensor of factor highest vectors.
  std::vector<int> top(k);
  for (int j = 0; j < k; ++j) top[j] = factors[j]->hw;
  SFpVec v0{{get_id(top), 1}};

  // Breadth-first generation of M = U v0 restricted to the allowed cone.
  std::map<Weight, FpSpan> span;
  struct Item {
    Weight w;
    SFpVec vec;
  };
  std::vector<Item> queue;
  span.emplace(lambda, FpSpan{{}, p}).first->second.insert(v0);
  queue.push_back({lambda, v0});
  for (size_t q = 0; q < queue.size(); ++q) {
    const Item cur = queue[q];  // copy: queue may reallocate
    for (int i = 1; i <= rd.rank; ++i) {
      const Weight alpha_w = rd.simple_root_weight(i - 1);
      Weight tgt = cur.w;
      for (int r = 1; r <= rglob; ++r) {
        tgt = sub(tgt, alpha_w);
        // Both conditions are monotone along the alpha_i string.
        if (!allowed(tgt)) break;
        SFpVec img = apply_lowering(i, r, cur.vec);
        if (img.empty()) continue;
        auto& sp = span.emplace(tgt, FpSpan{{}, p}).first->second;
        if (sp.insert(img)) queue.push_back({tgt, std::move(img)});
      }
    }
  }

  // Contravariant form on the ambient basis mod p: product of the factor
  // forms, supported on pairs with matching per-factor weights.
  {
    int norm0 = 1;
    for (int j = 0; j < k; ++j)
      norm0 = fp_norm(1LL * norm0 * rat_mod(factors[j]->form(top[j], top[j])),
                      p);
    if (norm0 == 0)
      throw std::invalid_argument("weyl_block_ranks: degenerate top norm");
  }

  std::map<Weight, int> out;
  for (const auto& nu : targets) {
    auto sit = span.find(nu);
    std::vector<SFpVec> rows;
    if (sit != span.end())
      for (auto& [piv, row] : sit->second.rows) rows.push_back(row);
    const size_t b = rows.size();
    if (static_cast<long long>(b) > ch.at(nu))
      throw std::logic_error("weyl_block_ranks: block exceeds chi");

    // Local column set, grouped by the tuple of factor weights.
    std::map<int, int> col_of;
    std::vector<int> cols;
    for (const auto& row : rows)
      for (const auto& [id, c] : row)
        if (col_of.emplace(id, static_cast<int>(cols.size())).second)
          cols.push_back(id);
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int x : cols) {
      std::vector<int> key;
      for (int j = 0; j < k; ++j) {
        const Weight& fw = factors[j]->weights[basis[x][j]];
        key.insert(key.end(), fw.begin(), fw.end());
      }
      groups[key].push_back(x);
    }

    // G = R F R^T mod p accumulated group by group.
    FpMat G(b, FpVec(b, 0));
    FpMat R(b, FpVec(cols.size(), 0));
    for (size_t a = 0; a < b; ++a)
      for (const auto& [id, c] : rows[a]) R[a][col_of.at(id)] = c;
    for (const auto& [key, grp] : groups) {
      const size_t m = grp.size();
      FpMat F(m, FpVec(m, 0));
      for (size_t x = 0; x < m; ++x)
        for (size_t y = x; y < m; ++y) {
          int val = 1;
          for (int j = 0; j < k; ++j) {
            val = fp_norm(
                1LL * val *
                    rat_mod(factors[j]->form(basis[grp[x]][j],
                                             basis[grp[y]][j])),
                p);
            if (val == 0) break;
          }
          F[x][y] = F[y][x] = val;
        }
      for (size_t a = 0; a < b; ++a) {
        std::vector<long long> t(m, 0);
        bool any = false;
        for (size_t x = 0; x < m; ++x) {
          const int ra = R[a][col_of.at(grp[x])];
          if (ra == 0) continue;
          any = true;
          for (size_t y = 0; y < m; ++y)
            if (F[x][y] != 0) t[y] += 1LL * ra * F[x][y];
        }
        if (!any) continue;
        for (size_t c = a; c < b; ++c) {
          long long val = 0;
          for (size_t y = 0; y < m; ++y)
            if (t[y] != 0)
              val += fp_norm(t[y], p) * R[c][col_of.at(grp[y])];
          const int add = fp_norm(val, p);
          G[a][c] = fp_norm(G[a][c] + add, p);
          if (c != a) G[c][a] = G[a][c];
        }
      }
    }
    out[nu] = fp_rank(std::move(G), p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Modules over the prime field.

struct ExplicitModule {
  RootDatum rd;
  int p = 0;
  int dim = 0;
  int hw = -1;
  int rbound = 1;
  std::vector<Weight> weights;
  std::map<std::pair<int, int>, std::vector<FpSMat>> act;
  std::optional<FpMat> gram;

  struct Raw {
    std::vector<std::pair<int, int>> ops;  // (simple index, power)
    FpVec coords;
  };
  std::vector<Raw> raws;

  const FpSMat* matrix(int root_idx, int sign, int r) const {
    if (r < 1) return nullptr;
    auto it = act.find({root_idx, sign});
    if (it == act.end() || r > static_cast<int>(it->second.size()))
      return nullptr;
    return &it->second[r - 1];
  }

  FpVec apply(int root_idx, int sign, int r, const FpVec& v) const {
    FpVec out(dim, 0);
    if (r == 0) return v;
    const FpSMat* m = matrix(root_idx, sign, r);
    if (!m) return out;
    for (int j = 0; j < dim; ++j) {
      if (v[j] == 0) continue;
      for (const auto& [i, val] : (*m)[j])
        out[i] = fp_norm(out[i] + 1LL * v[j] * val, p);
    }
    return out;
  }

  /// Replays a lowering word (left factor applied first).
  FpVec apply_word(const std::vector<std::pair<int, int>>& ops,
                   FpVec v) const {
    for (const auto& [i, r] : ops)
      v = apply(zdetail::simple_root_index(rd, i), -1, r, v);
    return v;
  }

  Weight weight_of(const FpVec& v) const {
    Weight w;
    bool found = false;
    for (int j = 0; j < dim; ++j)
      if (v[j] != 0) {
        if (!found) {
          w = weights[j];
          found = true;
        } else if (weights[j] != w) {
          throw std::invalid_argument("weight_of: not a weight vector");
        }
      }
    if (!found) throw std::invalid_argument("weight_of: zero vector");
    return w;
  }
};

inline ExplicitModule reduce_mod_p(const ZModule& zm, int p) {
  ExplicitModule m;
  m.rd = zm.rd;
  m.p = p;
  m.dim = zm.dim;
  m.hw = zm.hw;
  m.rbound = zm.rbound;
  m.weights = zm.weights;
  auto red = [&](const Int& v) {
    Int r = v % p;
    if (r < 0) r += p;
    return r.convert_to<int>();
  };
  for (const auto& [key, mats] : zm.act) {
    std::vector<FpSMat> out;
    for (const auto& mat : mats) {
      FpSMat fm(m.dim);
      for (int j = 0; j < m.dim; ++j)
        for (const auto& [i, v] : mat[j]) {
          int x = red(v);
          if (x != 0) fm[j].emplace_back(i, x);
        }
      out.push_back(std::move(fm));
    }
    m.act[key] = std::move(out);
  }
  if (zm.form) {
    FpMat g(m.dim, FpVec(m.dim, 0));
    for (int i = 0; i < m.dim; ++i)
      for (int j = 0; j < m.dim; ++j) {
        if (zm.weights[i] != zm.weights[j]) continue;
        Rat v = zm.form(i, j);
        if (boost::multiprecision::denominator(v) != 1)
          throw std::logic_error("reduce_mod_p: non-integral form");
        g[i][j] = red(boost::multiprecision::numerator(v));
      }
    m.gram = std::move(g);
  }
  for (const auto& raw : zm.raws) {
    ExplicitModule::Raw r;
    r.ops = raw.ops;
    r.coords.resize(m.dim, 0);
    for (int j = 0; j < m.dim; ++j) r.coords[j] = red(raw.coords[j]);
    m.raws.push_back(std::move(r));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Serialization (deterministic text; used by the optional binary cache).

inline std::string serialize_module(const ExplicitModule& m) {
  std::ostringstream os;
  os << "repcr-module 1\n";
  os << m.rd.type_letter << m.rd.rank << " p " << m.p << " dim " << m.dim
     << " hw " << m.hw << " rbound " << m.rbound << "\n";
  for (const auto& w : m.weights) os << weight_to_string(w) << "\n";
  os << "act " << m.act.size() << "\n";
  for (const auto& [key, mats] : m.act) {
    os << key.first << " " << key.second << " " << mats.size() << "\n";
    for (const auto& mat : mats) {
      for (int j = 0; j < m.dim; ++j) {
        os << j << ":";
        for (const auto& [i, v] : mat[j]) os << " " << i << "," << v;
        os << "\n";
      }
    }
  }
  os << "gram " << (m.gram ? 1 : 0) << "\n";
  if (m.gram)
    for (const auto& row : *m.gram) {
      for (size_t j = 0; j < row.size(); ++j)
        os << (j ? " " : "") << row[j];
      os << "\n";
    }
  os << "raws " << m.raws.size() << "\n";
  for (const auto& raw : m.raws) {
    os << raw.ops.size();
    for (const auto& [i, r] : raw.ops) os << " " << i << " " << r;
    os << "\n";
    for (size_t j = 0; j < raw.coords.size(); ++j)
      os << (j ? " " : "") << raw.coords[j];
    os << "\n";
  }
  return os.str();
}

inline ExplicitModule deserialize_module(const std::string& text) {
  std::istringstream is(text);
  std::string magic;
  int version = 0;
  is >> magic >> version;
  if (magic != "repcr-module" || version != 1)
    throw std::runtime_error("deserialize_module: bad header");
  ExplicitModule m;
  std::string datum, tok;
  is >> datum >> tok >> m.p >> tok >> m.dim >> tok >> m.hw >> tok >> m.rbound;
  m.rd = parse_root_datum(datum);
  m.weights.resize(m.dim);
  for (int j = 0; j < m.dim; ++j) {
    std::string w;
    is >> w;
    m.weights[j] = parse_weight(w, m.rd.rank);
  }
  size_t nact = 0;
  is >> tok >> nact;
  for (size_t k = 0; k < nact; ++k) {
    int root = 0, sign = 0;
    size_t nr = 0;
    is >> root >> sign >> nr;
    std::vector<FpSMat> mats;
    for (size_t r = 0; r < nr; ++r) {
      FpSMat mat(m.dim);
      for (int j = 0; j < m.dim; ++j) {
        std::string col;
        is >> col;
        size_t colon = col.find(':');
        std::string rest = col.substr(colon + 1);
        // entries follow as "i,v" tokens until the next "j:" token
        (void)rest;
        while (is >> std::ws, is.peek() != EOF) {
          std::streampos pos = is.tellg();
          std::string entry;
          if (!(is >> entry)) break;
          if (entry.find(':') != std::string::npos || entry == "act" ||
              entry == "gram") {
            is.seekg(pos);
            break;
          }
          size_t comma = entry.find(',');
          if (comma == std::string::npos) {
            is.seekg(pos);
            break;
          }
          mat[j].emplace_back(std::stoi(entry.substr(0, comma)),
                              std::stoi(entry.substr(comma + 1)));
        }
      }
      mats.push_back(std::move(mat));
    }
    m.act[{root, sign}] = std::move(mats);
  }
  int has_gram = 0;
  is >> tok >> has_gram;
  if (has_gram) {
    FpMat g(m.dim, FpVec(m.dim, 0));
    for (int i = 0; i < m.dim; ++i)
      for (int j = 0; j < m.dim; ++j) is >> g[i][j];
    m.gram = std::move(g);
  }
  size_t nraws = 0;
  is >> tok >> nraws;
  for (size_t k = 0; k < nraws; ++k) {
    ExplicitModule::Raw raw;
    size_t nops = 0;
    is >> nops;
    for (size_t o = 0; o < nops; ++o) {
      int i = 0, r = 0;
      is >> i >> r;
      raw.ops.emplace_back(i, r);
    }
    raw.coords.resize(m.dim);
    for (int j = 0; j < m.dim; ++j) is >> raw.coords[j];
    m.raws.push_back(std::move(raw));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Module registry (memoization + optional on-disk cache).

namespace detail {

inline std::shared_ptr<const ExplicitModule> module_registry(
    const std::string& key, const std::function<ExplicitModule()>& build) {
  static std::map<std::string, std::shared_ptr<const ExplicitModule>> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lk(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::shared_ptr<const ExplicitModule> mod;
  const char* dir = std::getenv("REPCR_CACHE_DIR");
  std::filesystem::path file;
  if (dir && *dir) {
    std::string fname = key;
    for (char& c : fname)
      if (c == ':' || c == ',' || c == '/') c = '_';
    file = std::filesystem::path(dir) / (fname + ".mod");
    if (std::filesystem::exists(file)) {
      std::ifstream in(file, std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      mod = std::make_shared<ExplicitModule>(deserialize_module(ss.str()));
    }
  }
  if (!mod) {
    mod = std::make_shared<ExplicitModule>(build());
    if (dir && *dir) {
      std::filesystem::create_directories(file.parent_path());
      std::ofstream out(file, std::ios::binary);
      out << serialize_module(*mod);
    }
  }
  std::lock_guard<std::mutex> lk(mtx);
  auto [it, ok] = cache.emplace(key, mod);
  return it->second;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public constructors.

inline std::shared_ptr<const ExplicitModule> natural_module(char type,
                                                            int rank, int p) {
  const std::string key =
      std::string(1, type) + std::to_string(rank) + ":p" + std::to_string(p) +
      ":natural";
  return detail::module_registry(key, [&] {
    return reduce_mod_p(zdetail::natural_seed(type, rank), p);
  });
}

inline std::shared_ptr<const ExplicitModule> spin_module(int rank, int p) {
  const std::string key =
      "B" + std::to_string(rank) + ":p" + std::to_string(p) + ":spin";
  return detail::module_registry(
      key, [&] { return reduce_mod_p(zdetail::spin_seed(rank), p); });
}

inline std::shared_ptr<const ExplicitModule> weyl_module(const RootDatum& rd,
                                                         const Weight& lambda,
                                                         int p) {
  const long long wd = weyl_dim(rd, lambda);
  // Weyl modules serve as comparison objects for modules below the cap, so
  // they get a more generous bound of their own.
  if (wd > std::max(weakmax_dim_cap(), 4000))
    throw std::invalid_argument("weyl_module: dimension bound exceeded");
  const std::string key = detail::datum_key(rd) + ":p" + std::to_string(p) +
                          ":weyl:" + weight_to_string(lambda);
  return detail::module_registry(key, [&] {
    // TEMP PROFILING
    auto t0 = std::chrono::steady_clock::now();
    auto m = reduce_mod_p(zdetail::weyl_z(rd, lambda), p);
    double dt = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0).count();
    if (std::getenv("REPCR_PROFILE"))
      std::fprintf(stderr, "PROF weyl %s dim %lld %.2fs\n", key.c_str(), wd,
                   dt);
    return m;
  });
}

/// Quotient of V by the radical of its contravariant form.
inline ExplicitModule gram_radical_quotient(const ExplicitModule& V) {
  if (!V.gram) throw std::invalid_argument("gram_radical_quotient: no form");
  const int p = V.p;
  std::map<Weight, std::vector<int>> blocks;
  for (int j = 0; j < V.dim; ++j) blocks[V.weights[j]].push_back(j);

  // Radical basis per weight block (row-reduced, in global coordinates).
  std::vector<int> kept;                       // surviving global indices
  std::vector<int> pivot_of(V.dim, -1);        // global pivot -> rad row
  FpMat rad_rows;                              // global-width rref rows
  for (const auto& [w, idx] : blocks) {
    FpMat g(idx.size(), FpVec(idx.size(), 0));
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = 0; b < idx.size(); ++b)
        g[a][b] = (*V.gram)[idx[a]][idx[b]];
    auto null_basis = fp_nullspace(g, p);
    FpMat local(null_basis.begin(), null_basis.end());
    auto pivots = fp_rref(local, p);
    std::vector<bool> is_pivot(idx.size(), false);
    for (size_t r = 0; r < pivots.size(); ++r) {
      is_pivot[pivots[r]] = true;
      FpVec row(V.dim, 0);
      for (size_t c = 0; c < idx.size(); ++c) row[idx[c]] = local[r][c];
      pivot_of[idx[pivots[r]]] = static_cast<int>(rad_rows.size());
      rad_rows.push_back(std::move(row));
    }
    for (size_t c = 0; c < idx.size(); ++c)
      if (!is_pivot[c]) kept.push_back(idx[c]);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<int> kept_pos(V.dim, -1);
  for (size_t k = 0; k < kept.size(); ++k) kept_pos[kept[k]] = k;

  auto project = [&](FpVec v) -> FpVec {
    for (int j = 0; j < V.dim; ++j)
      if (v[j] != 0 && pivot_of[j] >= 0) {
        const int f = v[j];
        const FpVec& row = rad_rows[pivot_of[j]];
        for (int x = 0; x < V.dim; ++x)
          v[x] = fp_norm(v[x] - 1LL * f * row[x], p);
      }
    FpVec out(kept.size(), 0);
    for (size_t k = 0; k < kept.size(); ++k) out[k] = v[kept[k]];
    return out;
  };

  // The radical must be a submodule: its generators project to zero after
  // any generator action.
  for (const auto& row : rad_rows)
    for (const auto& [key, mats] : V.act)
      for (size_t r = 1; r <= mats.size(); ++r) {
        FpVec img = V.apply(key.first, key.second, static_cast<int>(r), row);
        for (int x : project(img))
          if (x != 0)
            throw std::logic_error("gram_radical_quotient: not a submodule");
      }

  ExplicitModule Q;
  Q.rd = V.rd;
  Q.p = p;
  Q.dim = static_cast<int>(kept.size());
  for (int j : kept) Q.weights.push_back(V.weights[j]);
  Q.hw = kept_pos[V.hw];
  if (Q.hw < 0) throw std::logic_error("gram_radical_quotient: lost top");
  Q.rbound = V.rbound;
  for (const auto& [key, mats] : V.act) {
    std::vector<FpSMat> out;
    for (const auto& mat : mats) {
      (void)mat;
      FpSMat fm(Q.dim);
      out.push_back(std::move(fm));
    }
    for (size_t r = 0; r < mats.size(); ++r) {
      for (int k = 0; k < Q.dim; ++k) {
        FpVec unit(V.dim, 0);
        unit[kept[k]] = 1;
        FpVec img = V.apply(key.first, key.second, static_cast<int>(r + 1),
                            unit);
        FpVec proj = project(img);
        for (int x = 0; x < Q.dim; ++x)
          if (proj[x] != 0) out[r][k].emplace_back(x, proj[x]);
      }
    }
    Q.act[key] = std::move(out);
  }
  FpMat g(Q.dim, FpVec(Q.dim, 0));
  for (int a = 0; a < Q.dim; ++a)
    for (int b = 0; b < Q.dim; ++b) g[a][b] = (*V.gram)[kept[a]][kept[b]];
  Q.gram = std::move(g);
  for (const auto& raw : V.raws) {
    ExplicitModule::Raw r;
    r.ops = raw.ops;
    r.coords = project(raw.coords);
    Q.raws.push_back(std::move(r));
  }
  return Q;
}

inline std::shared_ptr<const ExplicitModule> simple_module(const RootDatum& rd,
                                                           const Weight& lambda,
                                                           int p) {
  const std::string key = detail::datum_key(rd) + ":p" + std::to_string(p) +
                          ":simple:" + weight_to_string(lambda);
  return detail::module_registry(key, [&] {
    auto W = weyl_module(rd, lambda, p);
    return gram_radical_quotient(*W);
  });
}

inline ExplicitModule tensor_modules(const ExplicitModule& A,
                                     const ExplicitModule& B) {
  if (A.rd.type_letter != B.rd.type_letter || A.rd.rank != B.rd.rank ||
      A.p != B.p)
    throw std::invalid_argument("tensor_modules: datum mismatch");
  const int p = A.p;
  ExplicitModule m;
  m.rd = A.rd;
  m.p = p;
  m.dim = A.dim * B.dim;
  m.hw = A.hw * B.dim + B.hw;
  const int dB = B.dim;
  m.weights.resize(m.dim);
  for (int a = 0; a < A.dim; ++a)
    for (int b = 0; b < B.dim; ++b)
      m.weights[a * dB + b] = add(A.weights[a], B.weights[b]);
  m.rbound = std::max(p - 1, zdetail::max_pairing_bound(m.rd, m.weights));
  for (size_t g = 0; g < m.rd.positive_roots.size(); ++g)
    for (int sign : {+1, -1}) {
      std::vector<FpSMat> mats;
      for (int r = 1; r <= m.rbound; ++r) {
        FpSMat mat(m.dim);
        for (int a = 0; a < A.dim; ++a)
          for (int b = 0; b < B.dim; ++b) {
            std::map<int, int> col;
            for (int s = 0; s <= r; ++s) {
              const FpSMat* As =
                  s == 0 ? nullptr : A.matrix(static_cast<int>(g), sign, s);
              const FpSMat* Bs =
                  s == r ? nullptr
                         : B.matrix(static_cast<int>(g), sign, r - s);
              if (s == 0) {
                if (!Bs) continue;
                for (const auto& [i, v] : (*Bs)[b])
                  col[a * dB + i] = fp_norm(col[a * dB + i] + v, p);
              } else if (s == r) {
                if (!As) continue;
                for (const auto& [i, v] : (*As)[a])
                  col[i * dB + b] = fp_norm(col[i * dB + b] + v, p);
              } else {
                if (!As || !Bs) continue;
                for (const auto& [i1, v1] : (*As)[a])
                  for (const auto& [i2, v2] : (*Bs)[b])
                    col[i1 * dB + i2] =
                        fp_norm(col[i1 * dB + i2] + 1LL * v1 * v2, p);
              }
            }
            for (const auto& [i, v] : col)
              if (v != 0) mat[a * dB + b].emplace_back(i, v);
          }
        mats.push_back(std::move(mat));
      }
      m.act[{static_cast<int>(g), sign}] = std::move(mats);
    }
  if (A.gram && B.gram) {
    FpMat g(m.dim, FpVec(m.dim, 0));
    for (int x = 0; x < m.dim; ++x)
      for (int y = 0; y < m.dim; ++y)
        g[x][y] = fp_norm(
            1LL * (*A.gram)[x / dB][y / dB] * (*B.gram)[x % dB][y % dB], p);
    m.gram = std::move(g);
  }
  return m;
}

inline ExplicitModule frobenius_twist_module(const ExplicitModule& V) {
  ExplicitModule m;
  m.rd = V.rd;
  m.p = V.p;
  m.dim = V.dim;
  m.hw = V.hw;
  m.rbound = V.rbound * V.p;
  for (const auto& w : V.weights) m.weights.push_back(scale(V.p, w));
  for (const auto& [key, mats] : V.act) {
    std::vector<FpSMat> out;
    for (int r = 1; r <= m.rbound; ++r) {
      if (r % V.p == 0 && r / V.p <= static_cast<int>(mats.size()))
        out.push_back(mats[r / V.p - 1]);
      else
        out.push_back(FpSMat(m.dim));
    }
    m.act[key] = std::move(out);
  }
  m.gram = V.gram;
  return m;
}

// ---------------------------------------------------------------------------
// Maximal and weakly maximal vectors.

namespace detail {

/// Kernel of a family of operators restricted to a weight space; vectors are
/// returned in full coordinates.
inline std::vector<FpVec> weight_space_kernel(
    const ExplicitModule& V, const Weight& delta,
    const std::vector<std::pair<std::pair<int, int>, int>>& ops) {
  std::vector<int> block;
  for (int j = 0; j < V.dim; ++j)
    if (V.weights[j] == delta) block.push_back(j);
  if (block.empty()) return {};
  FpMat sys;
  for (const auto& [key, r] : ops) {
    FpMat cols(block.size(), FpVec(V.dim, 0));
    bool any = false;
    for (size_t k = 0; k < block.size(); ++k) {
      FpVec unit(V.dim, 0);
      unit[block[k]] = 1;
      cols[k] = V.apply(key.first, key.second, r, unit);
      for (int x : cols[k])
        if (x != 0) any = true;
    }
    if (!any) continue;
    for (int x = 0; x < V.dim; ++x) {
      FpVec row(block.size(), 0);
      bool nz = false;
      for (size_t k = 0; k < block.size(); ++k) {
        row[k] = cols[k][x];
        if (row[k] != 0) nz = true;
      }
      if (nz) sys.push_back(std::move(row));
    }
  }
  std::vector<FpVec> out;
  if (sys.empty()) {
    for (int j : block) {
      FpVec v(V.dim, 0);
      v[j] = 1;
      out.push_back(std::move(v));
    }
    return out;
  }
  for (const auto& coeffs : fp_nullspace(sys, V.p)) {
    FpVec v(V.dim, 0);
    for (size_t k = 0; k < block.size(); ++k) v[block[k]] = coeffs[k];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

/// Joint kernel of all divided powers of the simple raising operators.
inline std::vector<FpVec> maximal_vectors(const ExplicitModule& V,
                                          const Weight& delta) {
  std::vector<std::pair<std::pair<int, int>, int>> ops;
  for (int i = 1; i <= V.rd.rank; ++i)
    for (int r = 1; r <= V.rbound; ++r)
      ops.push_back({{zdetail::simple_root_index(V.rd, i), +1}, r});
  return detail::weight_space_kernel(V, delta, ops);
}

/// Joint kernel of the first powers X_a for all positive roots a.
inline std::vector<FpVec> weakly_maximal_vectors(const ExplicitModule& V,
                                                 const Weight& delta) {
  std::vector<std::pair<std::pair<int, int>, int>> ops;
  for (size_t g = 0; g < V.rd.positive_roots.size(); ++g)
    ops.push_back({{static_cast<int>(g), +1}, 1});
  return detail::weight_space_kernel(V, delta, ops);
}

inline bool is_weakly_maximal(const ExplicitModule& V, const FpVec& v) {
  for (size_t g = 0; g < V.rd.positive_roots.size(); ++g) {
    FpVec img = V.apply(static_cast<int>(g), +1, 1, v);
    for (int x : img)
      if (x != 0) return false;
  }
  return true;
}

/// From a weakly maximal v in V (x) W, produce (1 (x) X_beta) v for a
/// dominance-maximal beta with nonzero image; the result is again weakly
/// maximal.  Returns nothing when every 1 (x) X_beta kills v.
inline std::optional<std::pair<RootVec, FpVec>> raise_weakly_maximal(
    const ExplicitModule& V, const ExplicitModule& W, const FpVec& v) {
  const int dW = W.dim;
  const int dim = V.dim * W.dim;
  if (static_cast<int>(v.size()) != dim)
    throw std::invalid_argument("raise_weakly_maximal: size mismatch");
  auto one_tensor = [&](size_t g) {
    FpVec out(dim, 0);
    const FpSMat* m = W.matrix(static_cast<int>(g), +1, 1);
    if (!m) return out;
    for (int idx = 0; idx < dim; ++idx) {
      if (v[idx] == 0) continue;
      const int a = idx / dW, b = idx % dW;
      for (const auto& [i, val] : (*m)[b])
        out[a * dW + i] = fp_norm(out[a * dW + i] + 1LL * v[idx] * val, W.p);
    }
    return out;
  };
  std::vector<size_t> nonzero;
  for (size_t g = 0; g < V.rd.positive_roots.size(); ++g) {
    FpVec img = one_tensor(g);
    for (int x : img)
      if (x != 0) {
        nonzero.push_back(g);
        break;
      }
  }
  if (nonzero.empty()) return std::nullopt;
  // Dominance-maximal root among the candidates (lex-largest tie-break).
  auto leq = [&](const RootVec& a, const RootVec& b) {
    for (int i = 0; i < V.rd.rank; ++i)
      if (a[i] > b[i]) return false;
    return true;
  };
  size_t best = nonzero[0];
  for (size_t g : nonzero) {
    const RootVec &bg = V.rd.positive_roots[best], &cg = V.rd.positive_roots[g];
    if (leq(bg, cg) && bg != cg)
      best = g;
    else if (!leq(cg, bg) && !leq(bg, cg) && cg > bg)
      best = g;  // incomparable: deterministic lex tie-break
  }
  for (size_t g : nonzero)
    if (g != best && !leq(V.rd.positive_roots[g], V.rd.positive_roots[best]) &&
        leq(V.rd.positive_roots[best], V.rd.positive_roots[g]))
      best = g;
  return std::make_pair(V.rd.positive_roots[best], one_tensor(best));
}

// ---------------------------------------------------------------------------
// CR oracles.

namespace detail {

/// Span of the orbit of v under first powers of all root operators
/// (for a weakly maximal v this is the generated restricted submodule).
inline FpMat restricted_orbit_span(const ExplicitModule& V, const FpVec& v) {
  FpMat basis{v};
  fp_rref(basis, V.p);
  size_t fresh = 0;
  while (fresh < basis.size()) {
    const size_t hi = basis.size();
    for (size_t k = fresh; k < hi; ++k)
      for (size_t g = 0; g < V.rd.positive_roots.size(); ++g)
        for (int sign : {+1, -1}) {
          FpVec img = V.apply(static_cast<int>(g), sign, 1, basis[k]);
          bool nz = false;
          for (int x : img)
            if (x != 0) nz = true;
          if (!nz) continue;
          FpMat test = basis;
          test.push_back(img);
          if (fp_rref(test, V.p).size() > basis.size()) basis = std::move(test);
        }
    fresh = hi;
    if (basis.size() == static_cast<size_t>(V.dim)) break;
  }
  return basis;
}

inline Weight mod_p_digit(const Weight& delta, int p) {
  Weight d0(delta.size());
  for (size_t i = 0; i < delta.size(); ++i) {
    int r = delta[i] % p;
    d0[i] = r < 0 ? r + p : r;
  }
  return d0;
}

}  // namespace detail

/// Does v (weakly maximal, weight delta) generate a simple restricted
/// submodule?  Equivalent to the generated span having the dimension of
/// L(delta mod p).
inline bool generates_simple_g1(const ExplicitModule& V, const FpVec& v) {
  const Weight delta = V.weight_of(v);
  const Weight d0 = detail::mod_p_digit(delta, V.p);
  auto L = simple_module(V.rd, d0, V.p);
  auto span = detail::restricted_orbit_span(V, v);
  return static_cast<int>(span.size()) == L->dim;
}

/// Complete reducibility over the first Frobenius kernel: every weakly
/// maximal vector generates a simple restricted submodule and those
/// submodules together span V.
inline bool is_cr_g1(const ExplicitModule& V) {
  if (V.dim > weakmax_dim_cap())
    throw std::invalid_argument("is_cr_g1: dimension bound exceeded");
  const int p = V.p;
  std::set<Weight> weight_set(V.weights.begin(), V.weights.end());
  FpMat total;
  for (const auto& delta : weight_set) {
    auto wmv = weakly_maximal_vectors(V, delta);
    if (wmv.empty()) continue;
    // Every vector of the space must generate a simple submodule; enumerate
    // the projective points over F_p.
    const size_t d = wmv.size();
    double points = (std::pow(static_cast<double>(p), static_cast<double>(d)) -
                     1.0) /
                    (p - 1);
    if (points > 200000.0)
      throw std::invalid_argument("is_cr_g1: too many weakly maximal lines");
    std::vector<int> coeff(d, 0);
    std::function<void(size_t, bool)> enumerate = [&](size_t idx,
                                                      bool leading_done) {
      if (idx == d) {
        if (!leading_done) return;
        FpVec v(V.dim, 0);
        for (size_t k = 0; k < d; ++k)
          if (coeff[k] != 0)
            for (int x = 0; x < V.dim; ++x)
              v[x] = fp_norm(v[x] + 1LL * coeff[k] * wmv[k][x], p);
        if (!generates_simple_g1(V, v))
          throw std::runtime_error("__not_cr__");
        return;
      }
      if (!leading_done) {
        coeff[idx] = 0;
        enumerate(idx + 1, false);
        coeff[idx] = 1;  // projective normalization: leading coefficient 1
        enumerate(idx + 1, true);
      } else {
        for (int c = 0; c < p; ++c) {
          coeff[idx] = c;
          enumerate(idx + 1, true);
        }
      }
      coeff[idx] = 0;
    };
    try {
      enumerate(0, false);
    } catch (const std::runtime_error& e) {
      if (std::string(e.what()) == "__not_cr__") return false;
      throw;
    }
    for (const auto& v : wmv) {
      auto span = detail::restricted_orbit_span(V, v);
      for (auto& row : span) total.push_back(std::move(row));
    }
  }
  return fp_rref(total, p).size() == static_cast<size_t>(V.dim);
}

/// dim Hom(Delta(delta), V): the maximal-vector space at delta.
inline int hom_weyl_dim(const ExplicitModule& V, const Weight& delta) {
  return static_cast<int>(maximal_vectors(V, delta).size());
}

/// dim Hom(L(delta), V): maximal vectors whose induced map from the Weyl
/// module kills its radical.
inline int hom_simple_dim(const ExplicitModule& V, const Weight& delta) {
  auto mv = maximal_vectors(V, delta);
  if (mv.empty()) return 0;
  const int p = V.p;
  auto D = weyl_module(V.rd, delta, p);
  if (!D->gram) throw std::logic_error("hom_simple_dim: missing form");
  FpMat gram_rows = *D->gram;
  auto rad = fp_nullspace(gram_rows, p);
  if (rad.empty()) return static_cast<int>(mv.size());
  FpMat raw_mat;
  for (const auto& raw : D->raws) raw_mat.push_back(raw.coords);
  // Conditions: for each radical vector w = sum x_k raw_k, the replayed
  // word combination sum x_k ops_k(v) must vanish in V.
  FpMat sys;
  for (const auto& w : rad) {
    auto x = fp_solve_in_rowspan(raw_mat, w, p);
    if (!x) throw std::logic_error("hom_simple_dim: raws do not span");
    std::vector<FpVec> images(mv.size(), FpVec(V.dim, 0));
    for (size_t k = 0; k < D->raws.size(); ++k) {
      if ((*x)[k] == 0) continue;
      for (size_t t = 0; t < mv.size(); ++t) {
        FpVec img = V.apply_word(D->raws[k].ops, mv[t]);
        for (int c = 0; c < V.dim; ++c)
          images[t][c] = fp_norm(images[t][c] + 1LL * (*x)[k] * img[c], p);
      }
    }
    for (int c = 0; c < V.dim; ++c) {
      FpVec row(mv.size(), 0);
      bool nz = false;
      for (size_t t = 0; t < mv.size(); ++t) {
        row[t] = images[t][c];
        if (row[t] != 0) nz = true;
      }
      if (nz) sys.push_back(std::move(row));
    }
  }
  if (sys.empty()) return static_cast<int>(mv.size());
  return static_cast<int>(fp_nullspace(sys, p).size());
}

/// Brundan-Kleshchev criterion: V (contravariantly self-dual inside a
/// good-filtration module) is completely reducible iff the Weyl-hom and
/// simple-hom dimensions agree at every dominant weight.
inline bool is_cr_g(const ExplicitModule& V) {
  if (V.dim > weakmax_dim_cap())
    throw std::invalid_argument("is_cr_g: dimension bound exceeded");
  std::set<Weight> dominant;
  for (const auto& w : V.weights)
    if (V.rd.is_dominant(w)) dominant.insert(w);
  for (const auto& delta : dominant) {
    const int hw_dim = hom_weyl_dim(V, delta);
    if (hw_dim == 0) continue;
    if (hom_simple_dim(V, delta) != hw_dim) return false;
  }
  return true;
}

/// Injectivity of X_{-a,r} on the delta weight space of L(lambda) for
/// r = 0..<delta,a^v>, under the hypotheses of the Suprunenko proposition.
inline bool suprunenko_check(const ExplicitModule& V, const Weight& lambda,
                             const Weight& delta, int alpha /*1-based*/) {
  const char t = V.rd.type_letter;
  if (((t == 'B' || t == 'C' || t == 'F') && V.p <= 2) ||
      (t == 'G' && V.p <= 3))
    throw std::invalid_argument("suprunenko_check: prime hypothesis violated");
  auto diff = V.rd.root_coords(sub(lambda, delta));
  if (!diff || (*diff)[alpha - 1] != 0)
    throw std::invalid_argument("suprunenko_check: ht_alpha(lambda-delta)!=0");
  std::vector<int> block;
  for (int j = 0; j < V.dim; ++j)
    if (V.weights[j] == delta) block.push_back(j);
  const int bound = V.rd.pairing(delta, zdetail::unit_root(V.rd.rank, alpha));
  for (int r = 1; r <= bound; ++r) {
    FpMat imgs;
    for (int j : block) {
      FpVec unit(V.dim, 0);
      unit[j] = 1;
      imgs.push_back(
          V.apply(zdetail::simple_root_index(V.rd, alpha), -1, r, unit));
    }
    if (fp_rank(imgs, V.p) != static_cast<int>(block.size())) return false;
  }
  return true;
}

}  // namespace repcr
