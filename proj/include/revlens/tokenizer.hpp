#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revlens/text.hpp"

namespace revlens {

struct Token {
  std::string text;
  std::optional<std::string> pos;
  std::optional<std::string> lemma;

  Token() = default;
  explicit Token(std::string t) : text(std::move(t)) {}

  friend bool operator==(const Token&, const Token&) = default;
};

namespace text {

enum class CharKind { Space, Word, Punct };

inline CharKind classify(std::uint32_t cp) {
  if (cp < 0x80) {
    const char c = static_cast<char>(cp);
    if (c == ' ' || (c >= '\t' && c <= '\r')) return CharKind::Space;
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_')
      return CharKind::Word;
    if (cp < 0x20 || cp == 0x7F) return CharKind::Space;
    return CharKind::Punct;
  }
  if (is_unicode_space(cp)) return CharKind::Space;
  // Latin-1 punctuation and symbols, general punctuation, currency, arrows.
  if ((cp >= 0xA1 && cp <= 0xBF && cp != 0xAA && cp != 0xB5 && cp != 0xBA) || cp == 0xD7 || cp == 0xF7 ||
      (cp >= 0x2010 && cp <= 0x205E) || (cp >= 0x20A0 && cp <= 0x20CF) || (cp >= 0x2190 && cp <= 0x21FF) ||
      (cp >= 0x3000 && cp <= 0x303F) || cp == 0xFFFD)
    return CharKind::Punct;
  return CharKind::Word;
}

// Apostrophes and hyphens glue two word characters together ("don't",
// "well-known"); a dot does too when it is followed by a word character
// ("file.cpp", "v1.2"), but not at the end of a sentence.
inline bool is_connector(std::uint32_t cp) { return cp == '\'' || cp == 0x2019 || cp == '-' || cp == '.'; }

struct CodePoint {
  std::uint32_t value;
  std::size_t offset;
  std::size_t length;
};

inline std::vector<CodePoint> code_points(std::string_view s) {
  std::vector<CodePoint> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    auto n = utf8_sequence_length(s, i);
    if (n == 0) {
      out.push_back({0xFFFD, i, 1});
      i += 1;
    } else {
      out.push_back({decode_at(s, i, n), i, n});
      i += n;
    }
  }
  return out;
}

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Simple case folding for ASCII, Latin-1, Latin Extended-A, Greek and
// Cyrillic capitals. Other scripts pass through unchanged.
inline std::uint32_t fold_case(std::uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp < 0x80) return cp;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x100 && cp <= 0x17F && cp != 0x130 && cp != 0x131 && cp != 0x138 && cp != 0x149 && cp != 0x17F) {
    const bool odd_upper = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
    if (odd_upper) return (cp % 2 == 1) ? cp + 1 : cp;
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 32;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 32;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 80;
  return cp;
}

inline std::string to_lower_utf8(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const auto& c : code_points(s)) append_utf8(out, fold_case(c.value));
  return out;
}

// True when the string has at least one letter or digit.
inline bool has_word_char(std::string_view s) {
  for (const auto& c : code_points(s)) {
    if (c.value == '_') continue;
    if (classify(c.value) == CharKind::Word) return true;
  }
  return false;
}

}  // namespace text

// Splits text into word, number and punctuation tokens in input order.
// A run of one repeated punctuation character ("...", "!!") is one token.
inline std::vector<Token> tokenize(std::string_view input) {
  using text::CharKind;
  const auto cps = text::code_points(input);
  std::vector<Token> tokens;
  const std::size_t n = cps.size();
  auto kind = [&](std::size_t i) { return text::classify(cps[i].value); };
  auto slice = [&](std::size_t a, std::size_t b) {
    const auto from = cps[a].offset;
    const auto to = cps[b - 1].offset + cps[b - 1].length;
    return std::string(input.substr(from, to - from));
  };
  std::size_t i = 0;
  while (i < n) {
    const auto k = kind(i);
    if (k == CharKind::Space) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (k == CharKind::Word) {
      while (j < n) {
        if (kind(j) == CharKind::Word) {
          ++j;
        } else if (text::is_connector(cps[j].value) && j + 1 < n && kind(j + 1) == CharKind::Word) {
          j += 2;
        } else {
          break;
        }
      }
    } else {
      while (j < n && cps[j].value == cps[i].value) ++j;
    }
    tokens.emplace_back(slice(i, j));
    i = j;
  }
  return tokens;
}

}  // namespace revlens
