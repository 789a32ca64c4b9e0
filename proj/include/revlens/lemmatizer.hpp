#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "revlens/data/lemma_data.hpp"
#include "revlens/lexicon.hpp"
#include "revlens/tokenizer.hpp"

namespace revlens {

enum class Inflection { Plural, Past, Gerund, Comparative, Superlative };

// Rule-based lemmatizer: an exception table for irregular forms, then
// suffix stripping (-s/-es/-ies, -ed, -ing, -er/-est) that uses the lexicon
// to choose between "stem", "stem+e" and an undoubled final consonant.
class Lemmatizer {
public:
  explicit Lemmatizer(std::shared_ptr<const Lexicon> lexicon = Lexicon::builtin()) : lexicon_(std::move(lexicon)) {}

  // With a Penn tag only the matching inflection is undone and uninflected
  // tags (NN, VB, JJ, ...) return the lowercased word. Without a tag every
  // rule is tried.
  std::string lemma(std::string_view word, std::optional<std::string_view> pos = std::nullopt) const {
    std::string w = text::to_lower_utf8(word);
    if (w.empty()) return w;
    if (pos) {
      const auto kind = inflection_of(*pos);
      if (!kind) return participle_base(w, *pos).value_or(w);
      if (auto e = exception(w)) return *e;
      if (auto r = undo(w, *kind)) return *r;
      return w;
    }
    if (auto e = exception(w)) return *e;
    for (auto kind : {Inflection::Gerund, Inflection::Past, Inflection::Plural})
      if (auto r = undo(w, kind)) return *r;
    return w;
  }

  Token operator()(Token t) const {
    t.lemma = lemma(t.text, t.pos ? std::optional<std::string_view>(*t.pos) : std::nullopt);
    return t;
  }

  static std::optional<Inflection> inflection_of(std::string_view tag) {
    if (tag == "NNS" || tag == "NNPS" || tag == "VBZ") return Inflection::Plural;
    if (tag == "VBD" || tag == "VBN") return Inflection::Past;
    if (tag == "VBG") return Inflection::Gerund;
    if (tag == "JJR" || tag == "RBR") return Inflection::Comparative;
    if (tag == "JJS" || tag == "RBS") return Inflection::Superlative;
    if (tag == "VBP") return Inflection::Plural;  // only "are"/"am" differ; handled by the exception table
    return std::nullopt;
  }

  std::optional<std::string> exception(const std::string& lower) const {
    const auto& table = exceptions();
    auto it = table.find(lower);
    if (it == table.end()) return std::nullopt;
    return it->second;
  }

  // Undoes one inflection; nullopt when the word does not carry it.
  std::optional<std::string> undo(const std::string& w, Inflection kind) const {
    switch (kind) {
      case Inflection::Plural: return undo_plural(w);
      case Inflection::Past:
        if (w.size() > 4 && w.ends_with("ied")) return w.substr(0, w.size() - 3) + "y";
        return undo_suffix(w, "ed");
      case Inflection::Gerund: return undo_suffix(w, "ing");
      case Inflection::Comparative:
        if (w.size() > 4 && w.ends_with("ier")) return w.substr(0, w.size() - 3) + "y";
        return undo_suffix(w, "er");
      case Inflection::Superlative:
        if (w.size() > 5 && w.ends_with("iest")) return w.substr(0, w.size() - 4) + "y";
        return undo_suffix(w, "est");
    }
    return std::nullopt;
  }

  // Participles used as adjectives or nouns ("using", "reported") map to
  // their verb when the lexicon knows it, so the lemma does not depend on
  // the surrounding context.
  std::optional<std::string> participle_base(const std::string& w, std::string_view pos) const {
    if (!(pos.starts_with("JJ") || pos.starts_with("NN"))) return std::nullopt;
    if (lexicon_->has_tag(w, "JJ") && !lexicon_->has_tag(w, "VBG") && !lexicon_->has_tag(w, "VBN") &&
        !lexicon_->has_tag(w, "VBD"))
      return std::nullopt;
    for (auto kind : {Inflection::Gerund, Inflection::Past}) {
      if (!w.ends_with(kind == Inflection::Gerund ? "ing" : "ed")) continue;
      if (auto e = exception(w)) return *e;
      if (auto r = undo(w, kind); r && lexicon_->has_tag(*r, "VB")) return r;
    }
    return std::nullopt;
  }

  // Base form that the lexicon knows as an uninflected word, if any.
  bool known_base(std::string_view w) const {
    auto* tags = lexicon_->find(w);
    if (!tags) return false;
    for (const auto& t : *tags)
      if (t == "VB" || t == "VBP" || t == "NN" || t == "NNP" || t == "JJ" || t == "RB") return true;
    return false;
  }

  const Lexicon& lexicon() const { return *lexicon_; }

private:
  static bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

  static bool has_vowel(std::string_view s) {
    for (std::size_t i = 0; i < s.size(); ++i)
      if (is_vowel(s[i]) || (s[i] == 'y' && i > 0)) return true;
    return false;
  }

  static bool is_consonant(char c) { return c >= 'a' && c <= 'z' && !is_vowel(c); }

  static std::size_t vowel_groups(std::string_view s) {
    std::size_t groups = 0;
    bool in = false;
    for (char c : s) {
      const bool v = is_vowel(c) || c == 'y';
      if (v && !in) ++groups;
      in = v;
    }
    return groups;
  }

  // Stems that lost a silent final "e": lov(e), creat(e), normaliz(e), ...
  static bool wants_e(std::string_view s) {
    const auto n = s.size();
    if (n < 2) return false;
    const char last = s[n - 1], prev = s[n - 2];
    if (last == 'v') return true;
    if (last == 'z' && prev != 'z') return true;
    if (n >= 4 && last == 't' && prev == 'a') return true;
    if (n >= 5 && last == 'r' && prev == 'u') return true;
    if (last == 'c' && (prev == 'u' || prev == 'n' || prev == 'r')) return true;
    if (last == 'l' && is_consonant(prev) && prev != 'l' && prev != 'r') return true;
    if (last == 's' && (prev == 'a' || prev == 'i' || prev == 'o' || prev == 'r' || prev == 'n')) return true;
    if (last == 'g' && (prev == 'd' || prev == 'r')) return true;
    // short consonant-vowel-consonant stems
    if (n >= 3 && n <= 4 && vowel_groups(s) == 1 && is_consonant(s[n - 3]) && is_vowel(prev) &&
        is_consonant(last) && last != 'w' && last != 'x' && last != 'y')
      return true;
    return false;
  }

  std::optional<std::string> undo_suffix(const std::string& w, std::string_view suffix) const {
    if (!w.ends_with(suffix)) return std::nullopt;
    const std::string stem = w.substr(0, w.size() - suffix.size());
    if (stem.size() < 2 || !has_vowel(stem)) return std::nullopt;
    const bool doubled = stem.size() >= 3 && stem.back() == stem[stem.size() - 2] && is_consonant(stem.back());
    if (known_base(stem)) return stem;
    if (doubled && known_base(stem.substr(0, stem.size() - 1))) return stem.substr(0, stem.size() - 1);
    if (known_base(stem + "e")) return stem + "e";
    if (doubled && std::string_view("lsfz").find(stem.back()) == std::string_view::npos)
      return stem.substr(0, stem.size() - 1);
    if (!doubled && wants_e(stem)) return stem + "e";
    return stem;
  }

  std::optional<std::string> undo_plural(const std::string& w) const {
    if (w.size() < 4 || !w.ends_with('s')) return std::nullopt;
    if (w.ends_with("ss") || w.ends_with("us") || w.ends_with("is") || w.ends_with("'s")) return std::nullopt;
    const std::string minus_s = w.substr(0, w.size() - 1);
    if (known_base(minus_s)) return minus_s;
    if (w.ends_with("ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
    if (w.ends_with("es")) {
      const std::string minus_es = w.substr(0, w.size() - 2);
      if (known_base(minus_es)) return minus_es;
      if (w.ends_with("sses") || w.ends_with("shes") || w.ends_with("ches") || w.ends_with("xes") ||
          w.ends_with("zzes"))
        return minus_es;
    }
    return minus_s;
  }

  static const std::unordered_map<std::string, std::string>& exceptions() {
    static const auto table = [] {
      std::unordered_map<std::string, std::string> t;
      std::string_view s = data::kLemmaExceptions;
      std::vector<std::string> words;
      std::size_t i = 0;
      while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\n')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\n') ++j;
        if (j > i) words.emplace_back(s.substr(i, j - i));
        i = j;
      }
      for (std::size_t k = 0; k + 1 < words.size(); k += 2) t.emplace(words[k], words[k + 1]);
      return t;
    }();
    return table;
  }

  std::shared_ptr<const Lexicon> lexicon_;
};

inline Token lemmatize(const Token& token) {
  static const Lemmatizer instance;
  return instance(token);
}

}  // namespace revlens
