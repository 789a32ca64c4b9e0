#pragma once

#include <array>
#include <string_view>

namespace revlens {

// Coarse part-of-speech families. The first eight are the classic parts of
// speech; Other collects Penn tags outside them (DT, CD, MD, TO, EX, ...)
// so that every emitted tag has exactly one family.
enum class CoarseClass { Noun, Verb, Adjective, Adverb, Preposition, Conjunction, Pronoun, Interjection, Other };

inline constexpr std::array<std::string_view, 45> kPennTags = {
    "CC",  "CD",  "DT",   "EX",  "FW",  "IN",  "JJ",  "JJR",   "JJS",   "LS",  "MD", "NN",
    "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB",   "RBR",   "RBS", "RP", "SYM",
    "TO",  "UH",  "VB",   "VBD", "VBG", "VBN", "VBP", "VBZ",  "WDT",   "WP",  "WP$", "WRB",
    ".",   ",",   ":",    "``",  "''",  "-LRB-", "-RRB-", "#", "$"};

inline bool is_penn_tag(std::string_view tag) {
  for (auto t : kPennTags)
    if (t == tag) return true;
  return false;
}

inline CoarseClass coarse_class(std::string_view tag) {
  if (tag.starts_with("NN")) return CoarseClass::Noun;
  if (tag.starts_with("VB")) return CoarseClass::Verb;
  if (tag.starts_with("JJ")) return CoarseClass::Adjective;
  if (tag.starts_with("RB")) return CoarseClass::Adverb;
  if (tag == "IN") return CoarseClass::Preposition;
  if (tag == "CC") return CoarseClass::Conjunction;
  if (tag.starts_with("PRP")) return CoarseClass::Pronoun;
  if (tag == "UH") return CoarseClass::Interjection;
  return CoarseClass::Other;
}

inline std::string_view to_string(CoarseClass c) {
  switch (c) {
    case CoarseClass::Noun: return "N";
    case CoarseClass::Verb: return "V";
    case CoarseClass::Adjective: return "ADJ";
    case CoarseClass::Adverb: return "ADV";
    case CoarseClass::Preposition: return "P";
    case CoarseClass::Conjunction: return "CON";
    case CoarseClass::Pronoun: return "PRO";
    case CoarseClass::Interjection: return "INT";
    case CoarseClass::Other: return "OTHER";
  }
  return "OTHER";
}

}  // namespace revlens
