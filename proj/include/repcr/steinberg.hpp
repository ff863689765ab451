#pragma once

// Steinberg p-digit decomposition and the refined long/short factorization
// available for (B_n, p=2), (C_n, p=2), (F_4, p=2) and (G_2, p=3).

#include <stdexcept>
#include <vector>

#include "repcr/character.hpp"
#include "repcr/rootdatum.hpp"
#include "repcr/weights.hpp"

namespace repcr {

struct DigitDecomposition {
  std::vector<Weight> digits;  // lambda_0, ..., lambda_m, all p-restricted
  int p = 0;

  Weight reassemble() const {
    Weight w(digits.empty() ? 0 : digits[0].size(), 0);
    int scale_factor = 1;
    for (const auto& dgt : digits) {
      for (size_t i = 0; i < dgt.size(); ++i) w[i] += scale_factor * dgt[i];
      scale_factor *= p;
    }
    return w;
  }
};

/// Coordinatewise base-p digits of the fundamental coordinates.
inline DigitDecomposition p_digits(const Weight& lambda, int p) {
  DigitDecomposition out;
  out.p = p;
  Weight rest = lambda;
  bool nonzero = true;
  while (nonzero) {
    Weight digit(lambda.size());
    nonzero = false;
    for (size_t i = 0; i < rest.size(); ++i) {
      digit[i] = rest[i] % p;
      rest[i] /= p;
      if (rest[i] != 0) nonzero = true;
    }
    out.digits.push_back(digit);
  }
  return out;
}

/// ch L(lambda) from digit characters: product of twisted digit characters.
/// `restricted_char` must supply ch L for p-restricted weights; an empty
/// optional propagates (Undetermined).
template <typename F>
std::optional<Character> steinberg_simple_char(const RootDatum& rd,
                                               const Weight& lambda, int p,
                                               F&& restricted_char) {
  auto dd = p_digits(lambda, p);
  Character out{{zero_weight(rd.rank), 1}};
  int twist = 1;
  for (const auto& digit : dd.digits) {
    auto ch = restricted_char(digit);
    if (!ch) return std::nullopt;
    out = tensor(out, frobenius_twist(*ch, twist));
    twist *= p;
  }
  return out;
}

/// The (type, p) families with the refined factorization L(lambda) =
/// L(lambda_l) (x) L(lambda_s) for p-restricted lambda.
inline bool refined_factorization_applies(char type_letter, int p) {
  return (p == 2 && (type_letter == 'B' || type_letter == 'C' || type_letter == 'F')) ||
         (p == 3 && type_letter == 'G');
}

struct RefinedSplit {
  Weight lambda_l, lambda_s;  // lambda = lambda_l + lambda_s
};

inline RefinedSplit refined_split(const RootDatum& rd, const Weight& lambda,
                                  int p) {
  if (!refined_factorization_applies(rd.type_letter, p))
    throw std::invalid_argument("refined_split: inapplicable (type, p)");
  if (!rd.is_dominant(lambda))
    throw std::invalid_argument("refined_split: non-dominant");
  auto [l, s] = rd.long_short_split(lambda);
  return RefinedSplit{l, s};
}

}  // namespace repcr
