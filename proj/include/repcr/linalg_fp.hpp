#pragma once

// Dense linear algebra over the prime field F_p (p small).

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace repcr {

using FpVec = std::vector<int>;            // entries in [0, p)
using FpMat = std::vector<std::vector<int>>;

inline int fp_norm(long long x, int p) {
  int r = static_cast<int>(x % p);
  return r < 0 ? r + p : r;
}

inline int fp_inv(int a, int p) {
  // Extended Euclid; p prime, a != 0 mod p.
  int t = 0, nt = 1, r = p, nr = a % p;
  if (nr < 0) nr += p;
  while (nr != 0) {
    int q = r / nr;
    int tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  assert(r == 1);
  return t < 0 ? t + p : t;
}

/// Row-reduce in place; returns pivot column per pivot row.
inline std::vector<int> fp_rref(FpMat& m, int p) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[r], m[sel]);
    const int inv = fp_inv(m[r][c], p);
    for (int j = c; j < cols; ++j) m[r][j] = fp_norm(1LL * m[r][j] * inv, p);
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const int f = m[i][c];
      for (int j = c; j < cols; ++j)
        m[i][j] = fp_norm(m[i][j] - 1LL * f * m[r][j], p);
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

inline int fp_rank(FpMat m, int p) {
  return static_cast<int>(fp_rref(m, p).size());
}

/// Basis of the right nullspace {x : m x = 0}.
inline std::vector<FpVec> fp_nullspace(FpMat m, int p) {
  if (m.empty()) return {};
  const int cols = static_cast<int>(m[0].size());
  auto pivots = fp_rref(m, p);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<FpVec> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    FpVec v(cols, 0);
    v[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = fp_norm(-m[r][c], p);
    basis.push_back(v);
  }
  return basis;
}

/// Solves B^T x = v for x where the rows of B span a space containing v.
/// Returns empty optional when v is outside the row span.
inline std::optional<FpVec> fp_solve_in_rowspan(const FpMat& B, const FpVec& v,
                                                int p) {
  const int rows = static_cast<int>(B.size());
  if (rows == 0) {
    for (int x : v)
      if (x != 0) return std::nullopt;
    return FpVec{};
  }
  const int cols = static_cast<int>(B[0].size());
  // Augmented elimination on [B^T | v].
  FpMat aug(cols, FpVec(rows + 1, 0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) aug[j][i] = B[i][j];
  for (int j = 0; j < cols; ++j) aug[j][rows] = v[j];
  auto pivots = fp_rref(aug, p);
  FpVec x(rows, 0);
  for (size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == rows) return std::nullopt;  // inconsistent
    x[pivots[r]] = aug[r][rows];
  }
  // Verify (guards against free variables that were silently zeroed).
  for (int j = 0; j < cols; ++j) {
    long long s = 0;
    for (int i = 0; i < rows; ++i) s += 1LL * B[i][j] * x[i];
    if (fp_norm(s - v[j], p) != 0) return std::nullopt;
  }
  return x;
}

/// Row space basis (rref rows).
inline FpMat fp_row_basis(FpMat m, int p) {
  fp_rref(m, p);
  return m;
}

}  // namespace repcr
