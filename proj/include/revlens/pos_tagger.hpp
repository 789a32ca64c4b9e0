#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "revlens/lemmatizer.hpp"
#include "revlens/lexicon.hpp"
#include "revlens/pos_tags.hpp"
#include "revlens/tokenizer.hpp"

namespace revlens {

// Assigns a Penn Treebank tag to every token in place.
class PosTagger {
public:
  virtual ~PosTagger() = default;
  virtual void tag(std::vector<Token>& tokens) const = 0;

  std::vector<Token> operator()(std::vector<Token> tokens) const {
    tag(tokens);
    return tokens;
  }
};

// Greedy lexicon tagger: most frequent lexicon tag, inflection lookup
// through the lemmatizer, suffix heuristics for unknown words, then a few
// left-to-right contextual corrections (noun after a determiner, verb after
// "to"/a modal, present tense after a subject pronoun, imperative openers).
class RuleTagger final : public PosTagger {
public:
  explicit RuleTagger(std::shared_ptr<const Lexicon> lexicon = Lexicon::builtin())
      : lexicon_(std::move(lexicon)), lemmatizer_(lexicon_) {}

  void tag(std::vector<Token>& tokens) const override {
    std::vector<std::vector<std::string>> cands(tokens.size());
    bool sentence_start = true;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      cands[i] = candidates(tokens[i].text, sentence_start);
      tokens[i].pos = cands[i].front();
      sentence_start = is_sentence_end(tokens[i].text);
    }
    sentence_start = true;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const auto& c = cands[i];
      auto& pos = *tokens[i].pos;
      const std::string prev = (i > 0 && !sentence_start) ? *tokens[i - 1].pos : std::string();
      const std::string prev_word = (i > 0 && !sentence_start) ? text::to_lower(tokens[i - 1].text) : std::string();
      const std::string next = (i + 1 < tokens.size()) ? *tokens[i + 1].pos : std::string();
      auto has = [&](std::string_view t) { return std::find(c.begin(), c.end(), t) != c.end(); };
      auto first_with = [&](std::string_view prefix) -> const std::string* {
        for (const auto& t : c)
          if (t.starts_with(prefix)) return &t;
        return nullptr;
      };

      if (c.size() > 1) {
        if ((prev == "DT" || prev == "PRP$" || prev == "POS" || prev.starts_with("JJ") || prev == "CD") &&
            first_with("NN")) {
          pos = *first_with("NN");
        } else if ((prev == "TO" || prev == "MD") && has("VB")) {
          pos = "VB";
        } else if (prev == "PRP" && is_subject_pronoun(prev_word) && (has("VBP") || has("VB"))) {
          pos = has("VBP") ? "VBP" : "VB";
        } else if ((sentence_start || prev_word == "please") && has("VB") && next != "VBZ" && next != "VBD" &&
                   next != "VBP" && next != "MD") {
          pos = "VB";
        } else if (pos == "VBD" && has("VBN") && is_auxiliary(prev_word)) {
          pos = "VBN";
        }
      } else if (pos == "VBD" && is_auxiliary(prev_word)) {
        pos = "VBN";
      }
      sentence_start = is_sentence_end(tokens[i].text);
    }
  }

  // Candidate tags for one token, best first.
  std::vector<std::string> candidates(const std::string& word, bool sentence_start) const {
    if (auto p = punctuation_tag(word)) return {*p};
    if (!word.empty() && word[0] >= '0' && word[0] <= '9') return {"CD"};
    const auto lower = text::to_lower_utf8(word);
    if (auto* tags = lexicon_->find(lower)) return *tags;
    if (auto derived = inflected(lower); !derived.empty()) return derived;
    // hyphenated compounds take the class of their head
    if (auto dash = lower.rfind('-'); dash != std::string::npos && dash + 1 < lower.size()) {
      auto tail = candidates(lower.substr(dash + 1), false);
      if (tail.front() != "NNP") return tail;
    }
    const bool capitalized = word[0] >= 'A' && word[0] <= 'Z';
    if (capitalized && !sentence_start) return {lower.ends_with('s') && lower.size() > 3 ? "NNPS" : "NNP"};
    return {suffix_guess(lower)};
  }

private:
  static bool is_sentence_end(std::string_view t) { return t == "." || t == "!" || t == "?" || t == "..." || t == ";"; }

  static bool is_subject_pronoun(std::string_view w) {
    return w == "i" || w == "you" || w == "we" || w == "they";
  }

  static bool is_auxiliary(std::string_view w) {
    return w == "has" || w == "have" || w == "had" || w == "having" || w == "be" || w == "been" || w == "being" ||
           w == "is" || w == "are" || w == "was" || w == "were" || w == "am" || w == "get" || w == "got";
  }

  static std::optional<std::string> punctuation_tag(std::string_view w) {
    if (text::has_word_char(w)) return std::nullopt;
    if (w == "." || w == "!" || w == "?" || w.find_first_not_of(".!?") == std::string_view::npos) return ".";
    if (w == ",") return ",";
    if (w == ":" || w == ";" || w.find_first_not_of("-") == std::string_view::npos || w == "\xE2\x80\x94" ||
        w == "\xE2\x80\x93" || w == "\xE2\x80\xA6")
      return ":";
    if (w == "(" || w == "[" || w == "{") return "-LRB-";
    if (w == ")" || w == "]" || w == "}") return "-RRB-";
    if (w == "`" || w == "``" || w == "\xE2\x80\x9C" || w == "\xE2\x80\x98") return "``";
    if (w == "\"" || w == "'" || w == "''" || w == "\xE2\x80\x9D" || w == "\xE2\x80\x99") return "''";
    if (w == "#") return "#";
    if (w == "$") return "$";
    return "SYM";
  }

  std::vector<std::string> inflected(const std::string& w) const {
    std::vector<std::string> out;
    auto add = [&](std::string t) {
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
    };
    auto base_tags = [&](const std::optional<std::string>& base) -> const std::vector<std::string>* {
      if (!base || *base == w || !lemmatizer_.known_base(*base)) return nullptr;
      return lexicon_->find(*base);
    };
    if (auto* tags = base_tags(lemmatizer_.undo(w, Inflection::Gerund))) {
      for (const auto& t : *tags)
        if (t == "VB") add("VBG");
      if (!out.empty()) add("NN");
    }
    if (auto* tags = base_tags(lemmatizer_.undo(w, Inflection::Past))) {
      for (const auto& t : *tags) {
        if (t == "VB") {
          add("VBD");
          add("VBN");
        } else if (t == "NN") {
          add("JJ");
        }
      }
    }
    if (auto* tags = base_tags(lemmatizer_.undo(w, Inflection::Plural))) {
      for (const auto& t : *tags) {
        if (t == "NN") add("NNS");
        if (t == "VB") add("VBZ");
      }
    }
    if (out.empty()) {
      if (auto* tags = base_tags(lemmatizer_.undo(w, Inflection::Comparative))) {
        for (const auto& t : *tags)
          if (t == "JJ") add("JJR");
      }
      if (auto* tags = base_tags(lemmatizer_.undo(w, Inflection::Superlative))) {
        for (const auto& t : *tags)
          if (t == "JJ") add("JJS");
      }
    }
    return out;
  }

  static std::string suffix_guess(const std::string& w) {
    auto ends = [&](std::string_view s) { return w.size() > s.size() + 1 && w.ends_with(s); };
    if (ends("ly")) return "RB";
    if (ends("ing")) return "VBG";
    if (ends("ed")) return "VBD";
    if (ends("tion") || ends("sion") || ends("ment") || ends("ness") || ends("ity") || ends("ism") || ends("ship") ||
        ends("ance") || ends("ence") || ends("age") || ends("ist"))
      return "NN";
    if (ends("able") || ends("ible") || ends("ful") || ends("ous") || ends("ive") || ends("less") || ends("ish") ||
        ends("ical") || ends("ic") || ends("al") || ends("ary"))
      return "JJ";
    if (ends("est") && w.size() > 5) return "JJS";
    if (ends("s") && !w.ends_with("ss") && !w.ends_with("us") && !w.ends_with("is")) return "NNS";
    return "NN";
  }

  std::shared_ptr<const Lexicon> lexicon_;
  Lemmatizer lemmatizer_;
};

}  // namespace revlens
