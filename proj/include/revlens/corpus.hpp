#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "revlens/io.hpp"
#include "revlens/text.hpp"
#include "revlens/timestamp.hpp"

namespace revlens {

enum class Label : std::uint8_t { Efficient = 0, NotEfficient = 1, SomeHowEfficient = 2, SystemGenerated = 3 };

inline constexpr std::array<Label, 4> kAllLabels = {Label::Efficient, Label::NotEfficient,
                                                    Label::SomeHowEfficient, Label::SystemGenerated};

inline constexpr std::size_t label_index(Label l) { return static_cast<std::size_t>(l); }

inline std::string_view to_string(Label l) {
  switch (l) {
    case Label::Efficient: return "Efficient";
    case Label::NotEfficient: return "Not-Efficient";
    case Label::SomeHowEfficient: return "Some-How-Efficient";
    case Label::SystemGenerated: return "System-Generated";
  }
  throw std::logic_error("bad label");
}

// Case-insensitive; spaces, hyphens and underscores are ignored so that
// "Not Efficient", "not-efficient" and "NotEfficient" all match.
inline std::optional<Label> try_parse_label(std::string_view s) {
  std::string key;
  for (char c : s) {
    if (c == ' ' || c == '-' || c == '_' || c == '\t') continue;
    key.push_back(text::ascii_lower(c));
  }
  if (key == "efficient") return Label::Efficient;
  if (key == "notefficient") return Label::NotEfficient;
  if (key == "somehowefficient") return Label::SomeHowEfficient;
  if (key == "systemgenerated") return Label::SystemGenerated;
  return std::nullopt;
}

inline Label parse_label(std::string_view s) {
  if (auto l = try_parse_label(s)) return *l;
  throw std::invalid_argument("unknown label '" + std::string(s) + "'");
}

struct RawComment {
  std::string id;
  std::string project;
  std::string author;
  std::string body;
  Timestamp created_at;
  std::string url;

  friend bool operator==(const RawComment&, const RawComment&) = default;
};

// A corpus item; unlabeled corpora (fresh mining output) leave label empty.
struct CorpusEntry {
  RawComment comment;
  std::optional<Label> label;

  friend bool operator==(const CorpusEntry&, const CorpusEntry&) = default;
};

class CorpusError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class Corpus {
public:
  Corpus() = default;
  explicit Corpus(std::string source) : source_(std::move(source)) {}

  // Normalizes the body; rejects empty bodies and duplicate ids.
  void add(RawComment c, std::optional<Label> label = std::nullopt) {
    if (c.id.empty()) throw CorpusError("comment id is empty");
    c.body = text::normalize(c.body);
    if (c.body.empty()) throw CorpusError("comment '" + c.id + "' has an empty body");
    if (!ids_.insert(c.id).second) throw CorpusError("duplicate comment id '" + c.id + "'");
    entries_.push_back({std::move(c), label});
  }

  void add(CorpusEntry e) { add(std::move(e.comment), e.label); }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(const std::string& id) const { return ids_.count(id) != 0; }
  const std::string& source() const { return source_; }
  const std::vector<CorpusEntry>& entries() const { return entries_; }
  const CorpusEntry& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool fully_labeled() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.label.has_value(); });
  }

  friend bool operator==(const Corpus& a, const Corpus& b) { return a.entries_ == b.entries_; }

private:
  std::string source_;
  std::vector<CorpusEntry> entries_;
  std::unordered_set<std::string> ids_;
};

// ---- JSON Lines ----------------------------------------------------------

inline nlohmann::ordered_json to_json(const CorpusEntry& e) {
  nlohmann::ordered_json j;
  j["id"] = e.comment.id;
  j["project"] = e.comment.project;
  j["author"] = e.comment.author;
  j["body"] = e.comment.body;
  j["created_at"] = e.comment.created_at.to_string();
  j["url"] = e.comment.url;
  if (e.label) j["label"] = to_string(*e.label);
  return j;
}

inline std::string to_jsonl_line(const CorpusEntry& e) {
  return to_json(e).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

namespace detail {

inline std::string required_string(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) throw std::invalid_argument(std::string("missing field '") + key + "'");
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<std::int64_t>());
  throw std::invalid_argument(std::string("field '") + key + "' is not a string");
}

}  // namespace detail

inline CorpusEntry entry_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
  CorpusEntry e;
  e.comment.id = detail::required_string(j, "id");
  e.comment.project = detail::required_string(j, "project");
  e.comment.author = detail::required_string(j, "author");
  e.comment.body = detail::required_string(j, "body");
  const auto ts = detail::required_string(j, "created_at");
  auto t = Timestamp::try_parse(ts);
  if (!t) throw std::invalid_argument("invalid created_at '" + ts + "'");
  e.comment.created_at = *t;
  e.comment.url = detail::required_string(j, "url");
  if (auto it = j.find("label"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw std::invalid_argument("field 'label' is not a string");
    e.label = parse_label(it->get<std::string>());
  }
  return e;
}

// Parses JSON Lines text. Every malformed line is reported, with its line
// number, in a single CorpusError.
inline Corpus parse_corpus_jsonl(std::string_view content, std::string source) {
  Corpus corpus(std::move(source));
  std::vector<std::string> problems;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    auto nl = content.find('\n', start);
    if (nl == std::string_view::npos) nl = content.size();
    auto line = text::trim(content.substr(start, nl - start));
    start = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      corpus.add(entry_from_json(j));
    } catch (const std::exception& ex) {
      problems.push_back("line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  if (!problems.empty()) {
    std::string msg = corpus.source() + ": " + std::to_string(problems.size()) + " malformed record(s)";
    for (const auto& p : problems) msg += "\n  " + p;
    throw CorpusError(msg);
  }
  return corpus;
}

// ---- CSV (body,label) ----------------------------------------------------

// RFC 4180 records: comma separated, double-quoted fields may contain
// commas, newlines and doubled quotes. Returns (first line number, fields).
inline std::vector<std::pair<std::size_t, std::vector<std::string>>> parse_csv(std::string_view s) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false, field_started = false;
  std::size_t line = 1, record_line = 1;
  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    if (!(fields.size() == 1 && fields[0].empty())) rows.emplace_back(record_line, std::move(fields));
    fields.clear();
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < s.size() && s[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < s.size() && s[i + 1] == '\n') ++i;
      end_record();
      ++line;
      record_line = line;
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) throw CorpusError("line " + std::to_string(record_line) + ": unterminated quoted field");
  if (!field.empty() || !fields.empty()) end_record();
  return rows;
}

inline Corpus parse_corpus_csv(std::string_view content, const std::string& project, std::string source) {
  Corpus corpus(std::move(source));
  std::vector<std::string> problems;
  auto rows = parse_csv(content);
  std::size_t first = 0;
  if (!rows.empty() && rows[0].second.size() == 2 && text::to_lower(text::trim(rows[0].second[0])) == "body" &&
      text::to_lower(text::trim(rows[0].second[1])) == "label")
    first = 1;
  for (std::size_t r = first; r < rows.size(); ++r) {
    const auto& [line, fields] = rows[r];
    try {
      if (fields.size() != 2) throw std::invalid_argument("expected 2 fields, got " + std::to_string(fields.size()));
      RawComment c;
      c.id = project + "-" + std::to_string(r - first + 1);
      c.project = project;
      c.body = fields[0];
      corpus.add(std::move(c), parse_label(text::trim(fields[1])));
    } catch (const std::exception& ex) {
      problems.push_back("line " + std::to_string(line) + ": " + ex.what());
    }
  }
  if (!problems.empty()) {
    std::string msg = corpus.source() + ": " + std::to_string(problems.size()) + " malformed record(s)";
    for (const auto& p : problems) msg += "\n  " + p;
    throw CorpusError(msg);
  }
  return corpus;
}

// Loads a corpus file: JSON Lines, or CSV when the extension is ".csv".
inline Corpus load_corpus(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw CorpusError("corpus file not found: " + path.string());
  const auto content = read_file(path);
  if (text::to_lower(path.extension().string()) == ".csv")
    return parse_corpus_csv(content, path.stem().string(), path.string());
  return parse_corpus_jsonl(content, path.string());
}

inline std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const auto& e : corpus) out += to_jsonl_line(e);
  return out;
}

inline void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  atomic_write(path, serialize_corpus(corpus));
}

// ---- statistics ----------------------------------------------------------

inline std::map<Label, double> label_distribution(const Corpus& corpus) {
  if (corpus.empty()) throw CorpusError("label_distribution: empty corpus");
  std::array<std::size_t, 4> counts{};
  for (const auto& e : corpus) {
    if (!e.label) throw CorpusError("label_distribution: comment '" + e.comment.id + "' is unlabeled");
    ++counts[label_index(*e.label)];
  }
  std::map<Label, double> out;
  const auto n = static_cast<double>(corpus.size());
  for (auto l : kAllLabels) out[l] = static_cast<double>(counts[label_index(l)]) / n;
  return out;
}

inline std::map<Label, std::size_t> label_counts(const Corpus& corpus) {
  std::map<Label, std::size_t> out;
  for (auto l : kAllLabels) out[l] = 0;
  for (const auto& e : corpus)
    if (e.label) ++out[*e.label];
  return out;
}

// Per-project share of the corpus.
inline std::map<std::string, std::size_t> project_counts(const Corpus& corpus) {
  std::map<std::string, std::size_t> out;
  for (const auto& e : corpus) ++out[e.comment.project];
  return out;
}

// ---- splitting -----------------------------------------------------------

struct SplitOptions {
  double train_fraction = 0.75;
  std::uint64_t seed = 42;
  bool stratified = false;
};

struct CorpusSplit {
  Corpus train;
  Corpus test;
};

// Fisher-Yates shuffle keyed by the seed, then the first round(f*N) items
// go to train. Stratified mode shuffles within each label, guarantees every
// label present in the corpus at least one training item, and hands out the
// remaining training slots by largest remainder.
inline CorpusSplit split(const Corpus& corpus, const SplitOptions& opts) {
  if (!(opts.train_fraction > 0.0 && opts.train_fraction < 1.0))
    throw std::invalid_argument("split: train fraction must lie in (0, 1)");
  if (corpus.size() < 2) throw CorpusError("split: corpus needs at least 2 items");

  const std::size_t n = corpus.size();
  const auto target = static_cast<std::size_t>(std::llround(opts.train_fraction * static_cast<double>(n)));
  Rng rng(opts.seed);
  std::vector<bool> in_train(n, false);

  if (!opts.stratified) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    for (std::size_t i = 0; i < target; ++i) in_train[order[i]] = true;
  } else {
    if (!corpus.fully_labeled()) throw CorpusError("split: stratified mode needs a fully labeled corpus");
    std::array<std::vector<std::size_t>, 4> groups;
    for (std::size_t i = 0; i < n; ++i) groups[label_index(*corpus[i].label)].push_back(i);
    std::array<std::size_t, 4> quota{};
    std::array<double, 4> remainder{};
    std::size_t assigned = 0;
    for (std::size_t g = 0; g < 4; ++g) {
      if (groups[g].empty()) continue;
      const double exact = opts.train_fraction * static_cast<double>(groups[g].size());
      quota[g] = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(exact)));
      quota[g] = std::min(quota[g], groups[g].size());
      remainder[g] = exact - std::floor(exact);
      assigned += quota[g];
    }
    while (assigned < target) {
      std::size_t best = 4;
      for (std::size_t g = 0; g < 4; ++g) {
        if (quota[g] >= groups[g].size()) continue;
        if (best == 4 || remainder[g] > remainder[best]) best = g;
      }
      if (best == 4) break;
      ++quota[best];
      remainder[best] = -1.0;
      ++assigned;
    }
    for (std::size_t g = 0; g < 4; ++g) {
      rng.shuffle(groups[g]);
      for (std::size_t k = 0; k < quota[g]; ++k) in_train[groups[g][k]] = true;
    }
  }

  CorpusSplit out{Corpus(corpus.source() + "#train"), Corpus(corpus.source() + "#test")};
  // Insertion order of the parent corpus is kept inside each side.
  for (std::size_t i = 0; i < n; ++i) (in_train[i] ? out.train : out.test).add(corpus[i]);
  return out;
}

}  // namespace revlens
