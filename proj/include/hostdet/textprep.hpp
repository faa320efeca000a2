#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hostdet {

using TokenList = std::vector<std::string>;

struct NgramRange {
  int lo = 1;
  int hi = 1;

  /// Throws std::invalid_argument unless 1 <= lo <= hi.
  NgramRange(int lo_, int hi_);
  NgramRange() = default;

  friend bool operator==(const NgramRange&, const NgramRange&) = default;
};

/// Splits on Unicode whitespace, drops URL-like tokens (http*, www*),
/// strips every punctuation, symbol and number code point, lowercases with
/// the simple case mapping, and discards tokens left empty. Devanagari
/// letters and combining marks pass through; Devanagari digits and dandas
/// are removed.
TokenList normalize(std::string_view text);

/// Contiguous word n-grams for every n in the range, shortest first,
/// joined with a single space.
std::vector<std::string> ngrams(const TokenList& tokens, NgramRange range);

/// True if `token` contains no whitespace, punctuation, symbol or number
/// code point (the TokenList character-class invariant).
bool is_clean_token(std::string_view token);

}  // namespace hostdet
