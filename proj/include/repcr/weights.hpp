#pragma once

// Weight-lattice currency: integer coefficient vectors in the
// fundamental-weight basis, plus text parsing/printing helpers.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace repcr {

/// Weight in the fundamental-weight basis: coeffs[i] = <lambda, alpha_i^vee>.
using Weight = std::vector<int>;

/// Vector in the simple-root basis (integer coordinates).
using RootVec = std::vector<int>;

inline Weight zero_weight(int rank) { return Weight(rank, 0); }

inline Weight fundamental_weight(int rank, int i /*1-based*/) {
  Weight w(rank, 0);
  if (i < 1 || i > rank) throw std::out_of_range("fundamental_weight: index");
  w[i - 1] = 1;
  return w;
}

inline Weight add(const Weight& a, const Weight& b) {
  Weight c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline Weight sub(const Weight& a, const Weight& b) {
  Weight c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline Weight scale(int k, const Weight& a) {
  Weight c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = k * a[i];
  return c;
}

inline bool is_zero(const Weight& a) {
  for (int x : a)
    if (x != 0) return false;
  return true;
}

/// Canonical text form: comma-separated coefficients, e.g. "2,1".
inline std::string weight_to_string(const Weight& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

/// Parses either "2,1" or a symbolic sum like "w1+2w3" / "ω1+2ω3".
inline Weight parse_weight(const std::string& text, int rank) {
  auto fail = [&] { throw std::invalid_argument("parse_weight: '" + text + "'"); };
  // Strip whitespace.
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail();
  const bool symbolic = s.find('w') != std::string::npos ||
                        s.find("\xcf\x89") != std::string::npos;  // UTF-8 omega
  Weight w(rank, 0);
  if (!symbolic) {
    size_t pos = 0;
    int idx = 0;
    while (pos < s.size()) {
      size_t next = s.find(',', pos);
      std::string tok = s.substr(pos, next == std::string::npos ? next : next - pos);
      if (tok.empty() || idx >= rank) fail();
      w[idx++] = std::stoi(tok);
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    if (idx != rank) fail();
    return w;
  }
  // Symbolic: terms separated by '+', each "[k]w<index>" or "[k]ω<index>".
  size_t pos = 0;
  while (pos < s.size()) {
    size_t next = s.find('+', pos);
    std::string tok = s.substr(pos, next == std::string::npos ? next : next - pos);
    int coef = 1;
    size_t tp = 0;
    if (tp < tok.size() && isdigit(static_cast<unsigned char>(tok[tp]))) {
      size_t end;
      coef = std::stoi(tok.substr(tp), &end);
      tp += end;
    }
    if (tok.compare(tp, 1, "w") == 0)
      tp += 1;
    else if (tok.compare(tp, 2, "\xcf\x89") == 0)
      tp += 2;
    else
      fail();
    if (tp >= tok.size()) fail();
    int idx = std::stoi(tok.substr(tp));
    if (idx < 1 || idx > rank) fail();
    w[idx - 1] += coef;
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return w;
}

}  // namespace repcr
