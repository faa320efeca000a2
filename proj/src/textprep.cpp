#include "hostdet/textprep.hpp"

#include <stdexcept>

#include <unicode/uchar.h>

#include "utf8.hpp"

namespace hostdet {

namespace {

constexpr std::uint32_t kDroppedCategories =
    U_GC_P_MASK | U_GC_S_MASK | U_GC_N_MASK;

bool is_separator(UChar32 c) { return u_isUWhiteSpace(c); }

bool is_dropped(UChar32 c) { return (U_GET_GC_MASK(c) & kDroppedCategories) != 0; }

template <typename Fn>
void for_each_code_point(std::string_view s, Fn&& fn) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
  const auto len = static_cast<std::int32_t>(s.size());
  std::int32_t i = 0;
  while (i < len) {
    const std::int32_t start = i;
    UChar32 c;
    U8_NEXT(p, i, len, c);
    fn(c, start, i);
  }
}

bool looks_like_url(std::string_view token) {
  std::string lower;
  for_each_code_point(token, [&](UChar32 c, std::int32_t, std::int32_t) {
    if (c >= 0) detail::append_utf8(lower, u_tolower(c));
  });
  return lower.starts_with("http") || lower.starts_with("www");
}

}  // namespace

NgramRange::NgramRange(int lo_, int hi_) : lo(lo_), hi(hi_) {
  if (lo < 1 || hi < lo) {
    throw std::invalid_argument("invalid n-gram range (" + std::to_string(lo) + ", " +
                                std::to_string(hi) + ")");
  }
}

TokenList normalize(std::string_view text) {
  std::vector<std::string_view> raw;
  std::int32_t token_start = -1;
  for_each_code_point(text, [&](UChar32 c, std::int32_t start, std::int32_t) {
    const bool sep = c >= 0 && is_separator(c);
    if (sep && token_start >= 0) {
      raw.push_back(text.substr(token_start, start - token_start));
      token_start = -1;
    } else if (!sep && token_start < 0) {
      token_start = start;
    }
  });
  if (token_start >= 0) raw.push_back(text.substr(token_start));

  TokenList out;
  for (auto token : raw) {
    if (looks_like_url(token)) continue;
    std::string cleaned;
    for_each_code_point(token, [&](UChar32 c, std::int32_t, std::int32_t) {
      // Ill-formed sequences are treated like any other unwanted character.
      if (c < 0 || is_dropped(c)) return;
      detail::append_utf8(cleaned, u_tolower(c));
    });
    // Stripping can expose a URL prefix ("h.ttp" -> "http"); dropping it
    // here keeps normalize idempotent.
    if (cleaned.empty() || looks_like_url(cleaned)) continue;
    out.push_back(std::move(cleaned));
  }
  return out;
}

std::vector<std::string> ngrams(const TokenList& tokens, NgramRange range) {
  std::vector<std::string> out;
  const auto n_tokens = tokens.size();
  for (int n = range.lo; n <= range.hi; ++n) {
    const auto width = static_cast<std::size_t>(n);
    if (width > n_tokens) break;
    for (std::size_t i = 0; i + width <= n_tokens; ++i) {
      std::string term = tokens[i];
      for (std::size_t j = 1; j < width; ++j) {
        term.push_back(' ');
        term += tokens[i + j];
      }
      out.push_back(std::move(term));
    }
  }
  return out;
}

bool is_clean_token(std::string_view token) {
  if (token.empty()) return false;
  bool clean = true;
  for_each_code_point(token, [&](UChar32 c, std::int32_t, std::int32_t) {
    if (c < 0 || is_separator(c) || is_dropped(c)) clean = false;
  });
  return clean;
}

}  // namespace hostdet
