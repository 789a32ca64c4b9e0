#pragma once

#include <algorithm>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "revlens/data/stoplist_data.hpp"
#include "revlens/io.hpp"
#include "revlens/text.hpp"
#include "revlens/tokenizer.hpp"

namespace revlens {

class Stoplist {
public:
  Stoplist() = default;

  explicit Stoplist(const std::vector<std::string>& words) {
    for (const auto& w : words) add(w);
  }

  void add(std::string_view word) {
    auto w = text::to_lower_utf8(text::trim(word));
    if (!w.empty()) words_.insert(std::move(w));
  }

  bool contains(std::string_view word) const { return words_.count(text::to_lower_utf8(word)) != 0; }
  std::size_t size() const { return words_.size(); }
  const std::set<std::string>& words() const { return words_; }

  // One word per line; blank lines and '#' comments are skipped.
  static Stoplist parse(std::string_view content) {
    Stoplist s;
    for (const auto& line : text::split(content, '\n')) {
      auto w = text::trim(line);
      if (w.empty() || w.front() == '#') continue;
      s.add(w);
    }
    return s;
  }

  static Stoplist load(const std::filesystem::path& path) { return parse(read_file(path)); }

  static const Stoplist& builtin() {
    static const Stoplist instance = [] {
      Stoplist s;
      std::string_view d = data::kStoplist;
      std::size_t i = 0;
      while (i < d.size()) {
        while (i < d.size() && (d[i] == ' ' || d[i] == '\n')) ++i;
        std::size_t j = i;
        while (j < d.size() && d[j] != ' ' && d[j] != '\n') ++j;
        if (j > i) s.add(d.substr(i, j - i));
        i = j;
      }
      return s;
    }();
    return instance;
  }

  friend bool operator==(const Stoplist&, const Stoplist&) = default;

private:
  std::set<std::string> words_;
};

inline std::vector<Token> remove_stopwords(std::vector<Token> tokens, const Stoplist& stoplist = Stoplist::builtin()) {
  std::erase_if(tokens, [&](const Token& t) { return stoplist.contains(t.text); });
  return tokens;
}

}  // namespace revlens
