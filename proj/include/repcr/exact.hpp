#pragma once

// Exact characteristic-zero linear algebra: integer lattice bases in row
// echelon form (for divided-power lattices) and dense rational elimination.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace repcr {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Sparse integer vector: sorted (index, value) pairs, value != 0.
using SparseZVec = std::vector<std::pair<int, Int>>;

inline void sz_add_scaled(SparseZVec& a, const SparseZVec& b, const Int& c) {
  if (c == 0) return;
  SparseZVec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, c * b[j].second);
      ++j;
    } else {
      Int v = a[i].second + c * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

/// Integer lattice spanned by inserted vectors, kept in row echelon form
/// (pivots strictly increasing; entries exact).
class ZLattice {
 public:
  /// Inserts v into the lattice; returns true if the lattice grew or an
  /// existing row changed (i.e. v was not already in the lattice).
  bool insert(SparseZVec v) {
    bool changed = false;
    size_t row = 0;
    while (!v.empty()) {
      const int piv = v.front().first;
      while (row < rows_.size() && pivot(rows_[row]) < piv) ++row;
      if (row == rows_.size() || pivot(rows_[row]) > piv) {
        normalize(v);
        rows_.insert(rows_.begin() + row, std::move(v));
        size_reduce(row);
        reduce_above(row);
        return true;
      }
      // Same pivot: combine via extended gcd.
      Int a = rows_[row].front().second, b = v.front().second;
      Int q = b / a;
      if (q * a == b) {
        sz_add_scaled(v, rows_[row], -q);
        if (v.empty()) return changed;
        continue;  // pivot moved right
      }
      Int g, s, t;
      xgcd(a, b, g, s, t);
      SparseZVec newrow = rows_[row];
      scale_vec(newrow, s);
      sz_add_scaled(newrow, v, t);
      // Replace v by the combination with pivot eliminated.
      SparseZVec rest = v;
      scale_vec(rest, a / g);
      sz_add_scaled(rest, rows_[row], -(b / g));
      normalize(newrow);
      rows_[row] = std::move(newrow);
      size_reduce(row);
      reduce_above(row);
      changed = true;
      v = std::move(rest);
    }
    return changed;
  }

  /// Exact coordinates of v in the echelon basis (integers); empty optional
  /// if v is not in the lattice.
  std::optional<std::vector<Int>> express(SparseZVec v) const {
    std::vector<Int> coords(rows_.size(), 0);
    size_t row = 0;
    while (!v.empty()) {
      const int piv = v.front().first;
      while (row < rows_.size() && pivot(rows_[row]) < piv) ++row;
      if (row == rows_.size() || pivot(rows_[row]) > piv) return std::nullopt;
      Int q = v.front().second / rows_[row].front().second;
      if (q * rows_[row].front().second != v.front().second) return std::nullopt;
      coords[row] = q;
      sz_add_scaled(v, rows_[row], -q);
    }
    return coords;
  }

  const std::vector<SparseZVec>& rows() const { return rows_; }
  size_t rank() const { return rows_.size(); }

 private:
  static int pivot(const SparseZVec& v) { return v.front().first; }

  static Int floor_div(const Int& x, const Int& a) {
    Int q = x / a;
    if (q * a != x && (x < 0) != (a < 0)) --q;
    return q;
  }

  static const Int* entry_at(const SparseZVec& v, int col) {
    auto it = std::lower_bound(
        v.begin(), v.end(), col,
        [](const std::pair<int, Int>& e, int c) { return e.first < c; });
    if (it == v.end() || it->first != col) return nullptr;
    return &it->second;
  }

  /// Keeps entries small (Hermite-style): row idx gets its entries under
  /// later pivots reduced into [0, pivot value).  Leaves the lattice
  /// unchanged as a set.
  void size_reduce(size_t idx) {
    for (size_t j = idx + 1; j < rows_.size(); ++j) {
      const Int* x = entry_at(rows_[idx], pivot(rows_[j]));
      if (!x) continue;
      Int q = floor_div(*x, rows_[j].front().second);
      if (q != 0) sz_add_scaled(rows_[idx], rows_[j], -q);
    }
  }

  /// Reduces the entries of earlier rows under the pivot of row idx.
  void reduce_above(size_t idx) {
    const int col = pivot(rows_[idx]);
    const Int& a = rows_[idx].front().second;
    for (size_t i = 0; i < idx; ++i) {
      const Int* x = entry_at(rows_[i], col);
      if (!x) continue;
      Int q = floor_div(*x, a);
      if (q != 0) sz_add_scaled(rows_[i], rows_[idx], -q);
    }
  }

  static void scale_vec(SparseZVec& v, const Int& c) {
    for (auto& [i, x] : v) x *= c;
  }

  static void normalize(SparseZVec& v) {
    if (!v.empty() && v.front().second < 0)
      for (auto& [i, x] : v) x = -x;
  }

  static void xgcd(Int a, Int b, Int& g, Int& s, Int& t) {
    Int old_s = 1, cur_s = 0, old_r = a, cur_r = b;
    while (cur_r != 0) {
      Int q = old_r / cur_r;
      Int tmp = old_r - q * cur_r;
      old_r = cur_r;
      cur_r = tmp;
      tmp = old_s - q * cur_s;
      old_s = cur_s;
      cur_s = tmp;
    }
    g = old_r;
    s = old_s;
    t = (b == 0) ? Int(0) : Int((g - a * s) / b);
    if (g < 0) {
      g = -g;
      s = -s;
      t = -t;
    }
  }

  std::vector<SparseZVec> rows_;
};

/// Dense rational matrix.
using RatMat = std::vector<std::vector<Rat>>;

/// Row-reduce; returns pivot columns.
inline std::vector<int> rat_rref(RatMat& m) {
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
    Rat inv = m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

/// Right nullspace basis over Q, cleared to primitive integer vectors.
inline std::vector<std::vector<Int>> rat_nullspace_integer(RatMat m) {
  if (m.empty()) return {};
  const int cols = static_cast<int>(m[0].size());
  auto pivots = rat_rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Int>> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> v(cols, 0);
    v[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][c];
    // Clear denominators, divide by content.
    Int lcm = 1;
    for (auto& x : v) {
      Int den = boost::multiprecision::denominator(x);
      lcm = boost::multiprecision::lcm(lcm, den);
    }
    std::vector<Int> iv(cols);
    Int content = 0;
    for (int j = 0; j < cols; ++j) {
      Rat scaled = v[j] * lcm;
      iv[j] = boost::multiprecision::numerator(scaled);
      content = boost::multiprecision::gcd(content, iv[j]);
    }
    if (content > 1)
      for (auto& x : iv) x /= content;
    basis.push_back(std::move(iv));
  }
  return basis;
}

}  // namespace repcr
