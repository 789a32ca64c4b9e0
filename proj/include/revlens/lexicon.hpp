#pragma once

#include <algorithm>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "revlens/data/lexicon_data.hpp"
#include "revlens/io.hpp"
#include "revlens/pos_tags.hpp"
#include "revlens/text.hpp"

namespace revlens {

// Word -> candidate Penn tags, most frequent first. Keys are lowercase.
class Lexicon {
public:
  void add(std::string_view word, std::string_view tag) {
    if (!is_penn_tag(tag)) throw std::invalid_argument("lexicon: unknown Penn tag '" + std::string(tag) + "'");
    auto& tags = entries_[text::to_lower(word)];
    if (std::find(tags.begin(), tags.end(), tag) == tags.end()) tags.emplace_back(tag);
  }

  const std::vector<std::string>* find(std::string_view lower_word) const {
    auto it = entries_.find(std::string(lower_word));
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool has_tag(std::string_view lower_word, std::string_view tag) const {
    auto* tags = find(lower_word);
    return tags && std::find(tags->begin(), tags->end(), tag) != tags->end();
  }

  bool has_tag_prefix(std::string_view lower_word, std::string_view prefix) const {
    auto* tags = find(lower_word);
    if (!tags) return false;
    return std::any_of(tags->begin(), tags->end(), [&](const std::string& t) { return t.starts_with(prefix); });
  }

  std::size_t size() const { return entries_.size(); }

  // "word<TAB>tag" per line; repeated words add further tags in order.
  void merge_tsv(std::string_view content) {
    std::size_t line_no = 0;
    for (const auto& raw : text::split(content, '\n')) {
      ++line_no;
      auto line = text::trim(raw);
      if (line.empty() || line.front() == '#') continue;
      auto tab = line.find('\t');
      if (tab == std::string_view::npos)
        throw std::invalid_argument("lexicon line " + std::to_string(line_no) + ": expected word<TAB>tag");
      add(text::trim(line.substr(0, tab)), text::trim(line.substr(tab + 1)));
    }
  }

  static Lexicon from_tsv(std::string_view content) {
    Lexicon lex;
    lex.merge_tsv(content);
    return lex;
  }

  static Lexicon load(const std::filesystem::path& path) { return from_tsv(read_file(path)); }

  // Parses the compact "TAG: word word/T1/T2 ..." form of the bundled data.
  static Lexicon from_compact(std::string_view content) {
    Lexicon lex;
    for (const auto& raw : text::split(content, '\n')) {
      auto line = text::trim(raw);
      if (line.empty()) continue;
      const auto colon = line.find(": ");
      if (colon == std::string_view::npos) throw std::logic_error("bundled lexicon: bad line");
      const auto default_tag = line.substr(0, colon);
      std::string_view rest = line.substr(colon + 2);
      std::size_t pos = 0;
      while (pos < rest.size()) {
        while (pos < rest.size() && rest[pos] == ' ') ++pos;
        auto end = rest.find(' ', pos);
        if (end == std::string_view::npos) end = rest.size();
        if (end > pos) {
          auto parts = text::split(rest.substr(pos, end - pos), '/');
          if (parts.size() == 1) {
            lex.add(parts[0], default_tag);
          } else {
            for (std::size_t k = 1; k < parts.size(); ++k) lex.add(parts[0], parts[k]);
          }
        }
        pos = end;
      }
    }
    return lex;
  }

  static std::shared_ptr<const Lexicon> builtin() {
    static const auto instance = std::make_shared<const Lexicon>(from_compact(data::kLexicon));
    return instance;
  }

private:
  std::unordered_map<std::string, std::vector<std::string>> entries_;
};

}  // namespace revlens
