#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "revlens/text.hpp"
#include "revlens/tokenizer.hpp"

namespace revlens {

inline constexpr std::size_t kMaxNgramArity = 3;

// Contiguous run of 1..3 lowercase terms. Ordering is lexicographic over
// the term tuple, which fixes vocabulary index assignment.
struct Ngram {
  std::vector<std::string> terms;

  Ngram() = default;
  explicit Ngram(std::vector<std::string> t) : terms(std::move(t)) {
    if (terms.empty() || terms.size() > kMaxNgramArity)
      throw std::invalid_argument("Ngram: arity must be between 1 and 3");
    for (const auto& s : terms)
      if (s.empty()) throw std::invalid_argument("Ngram: empty term");
  }

  std::size_t arity() const { return terms.size(); }
  std::string to_string() const { return text::join(terms, " "); }

  friend auto operator<=>(const Ngram&, const Ngram&) = default;
  friend bool operator==(const Ngram&, const Ngram&) = default;
};

inline std::vector<Ngram> ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  if (n < 1) throw std::invalid_argument("ngrams: n must be at least 1");
  if (n > kMaxNgramArity) throw std::invalid_argument("ngrams: n must be at most 3");
  std::vector<Ngram> out;
  if (tokens.size() < n) return out;
  out.reserve(tokens.size() - n + 1);
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::vector<std::string> window;
    window.reserve(n);
    for (std::size_t k = 0; k < n; ++k) window.push_back(text::to_lower_utf8(tokens[i + k]));
    out.emplace_back(std::move(window));
  }
  return out;
}

struct NgramRange {
  std::size_t lo = 1;
  std::size_t hi = 2;

  void validate() const {
    if (lo < 1 || hi < lo || hi > kMaxNgramArity) throw std::invalid_argument("n-gram range must satisfy 1 <= lo <= hi <= 3");
  }
  friend bool operator==(const NgramRange&, const NgramRange&) = default;
};

inline std::vector<Ngram> ngrams_in_range(const std::vector<std::string>& tokens, NgramRange range) {
  std::vector<Ngram> out;
  for (std::size_t n = range.lo; n <= range.hi; ++n) {
    auto g = ngrams(tokens, n);
    out.insert(out.end(), std::make_move_iterator(g.begin()), std::make_move_iterator(g.end()));
  }
  return out;
}

// ---- sparse vectors ------------------------------------------------------

class SparseVector {
public:
  using Entry = std::pair<std::uint32_t, double>;

  SparseVector() = default;

  // Entries must have strictly increasing indices below dimension and
  // positive values.
  SparseVector(std::size_t dimension, std::vector<Entry> entries)
      : dimension_(dimension), entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto [idx, val] = entries_[i];
      if (idx >= dimension_) throw std::invalid_argument("SparseVector: index out of range");
      if (i > 0 && entries_[i - 1].first >= idx) throw std::invalid_argument("SparseVector: indices not increasing");
      if (!(val > 0.0)) throw std::invalid_argument("SparseVector: values must be positive");
    }
  }

  // Builds from unsorted (index, value) pairs, summing duplicates and
  // dropping non-positive results.
  static SparseVector from_unsorted(std::size_t dimension, std::vector<Entry> pairs) {
    std::sort(pairs.begin(), pairs.end());
    std::vector<Entry> merged;
    for (const auto& [i, v] : pairs) {
      if (!merged.empty() && merged.back().first == i)
        merged.back().second += v;
      else
        merged.emplace_back(i, v);
    }
    std::erase_if(merged, [](const Entry& e) { return !(e.second > 0.0); });
    return SparseVector(dimension, std::move(merged));
  }

  std::size_t dimension() const { return dimension_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  double dot(const double* dense) const {
    double s = 0.0;
    for (const auto& [i, v] : entries_) s += v * dense[i];
    return s;
  }

  double dot(const std::vector<double>& dense) const { return dot(dense.data()); }

  double dot(const SparseVector& other) const {
    double s = 0.0;
    std::size_t a = 0, b = 0;
    const auto& x = entries_;
    const auto& y = other.entries_;
    while (a < x.size() && b < y.size()) {
      if (x[a].first == y[b].first)
        s += x[a++].second * y[b++].second;
      else if (x[a].first < y[b].first)
        ++a;
      else
        ++b;
    }
    return s;
  }

  double squared_norm() const {
    double s = 0.0;
    for (const auto& e : entries_) s += e.second * e.second;
    return s;
  }

  SparseVector binarized() const {
    auto e = entries_;
    for (auto& p : e) p.second = 1.0;
    return SparseVector(dimension_, std::move(e));
  }

  friend SparseVector operator+(const SparseVector& a, const SparseVector& b) {
    if (a.dimension_ != b.dimension_) throw std::invalid_argument("SparseVector: dimension mismatch");
    auto pairs = a.entries_;
    pairs.insert(pairs.end(), b.entries_.begin(), b.entries_.end());
    return from_unsorted(a.dimension_, std::move(pairs));
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

private:
  std::size_t dimension_ = 0;
  std::vector<Entry> entries_;
};

// ---- vocabulary ----------------------------------------------------------

enum class FeatureMode : std::uint8_t { Counts = 0, Binary = 1 };

inline std::string_view to_string(FeatureMode m) { return m == FeatureMode::Counts ? "counts" : "binary"; }

class Vocabulary {
public:
  static constexpr int kFormatVersion = 1;

  Vocabulary() = default;

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  NgramRange ngram_range() const { return range_; }
  std::size_t min_count() const { return min_count_; }
  const Ngram& term(std::size_t index) const { return terms_.at(index); }
  const std::vector<Ngram>& terms() const { return terms_; }

  std::optional<std::uint32_t> index_of(const Ngram& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["version"] = kFormatVersion;
    j["ngram_range"] = {range_.lo, range_.hi};
    j["min_count"] = min_count_;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& t : terms_) arr.push_back(t.terms);
    j["terms"] = std::move(arr);
    return j;
  }

  static Vocabulary from_json(const nlohmann::json& j) {
    if (j.at("version").get<int>() != kFormatVersion) throw std::invalid_argument("vocabulary: unsupported version");
    std::vector<Ngram> terms;
    for (const auto& t : j.at("terms")) terms.emplace_back(t.get<std::vector<std::string>>());
    const auto r = j.at("ngram_range");
    return from_sorted_terms(std::move(terms), {r.at(0).get<std::size_t>(), r.at(1).get<std::size_t>()},
                             j.at("min_count").get<std::size_t>());
  }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.terms_ == b.terms_ && a.range_ == b.range_ && a.min_count_ == b.min_count_;
  }

private:
  static Vocabulary from_sorted_terms(std::vector<Ngram> terms, NgramRange range, std::size_t min_count) {
    range.validate();
    if (min_count < 1) throw std::invalid_argument("vocabulary: min_count must be >= 1");
    Vocabulary v;
    v.range_ = range;
    v.min_count_ = min_count;
    v.terms_ = std::move(terms);
    for (std::size_t i = 0; i < v.terms_.size(); ++i) {
      if (i > 0 && !(v.terms_[i - 1] < v.terms_[i])) throw std::invalid_argument("vocabulary: terms not sorted");
      v.index_.emplace(v.terms_[i], static_cast<std::uint32_t>(i));
    }
    return v;
  }

  friend Vocabulary fit_vocabulary(const std::vector<std::vector<std::string>>&, NgramRange, std::size_t);

  NgramRange range_{};
  std::size_t min_count_ = 1;
  std::vector<Ngram> terms_;
  std::map<Ngram, std::uint32_t> index_;
};

// Indices are assigned in lexicographic n-gram order.
inline Vocabulary fit_vocabulary(const std::vector<std::vector<std::string>>& docs, NgramRange range = {},
                                 std::size_t min_count = 1) {
  if (docs.empty()) throw std::invalid_argument("fit_vocabulary: empty corpus");
  range.validate();
  if (min_count < 1) throw std::invalid_argument("fit_vocabulary: min_count must be >= 1");
  std::map<Ngram, std::size_t> counts;
  for (const auto& doc : docs)
    for (auto& g : ngrams_in_range(doc, range)) ++counts[std::move(g)];
  std::vector<Ngram> terms;
  for (const auto& [g, c] : counts)
    if (c >= min_count) terms.push_back(g);
  return Vocabulary::from_sorted_terms(std::move(terms), range, min_count);
}

inline SparseVector vectorize(const std::vector<std::string>& tokens, const Vocabulary& vocab,
                              FeatureMode mode = FeatureMode::Counts) {
  std::vector<SparseVector::Entry> pairs;
  for (const auto& g : ngrams_in_range(tokens, vocab.ngram_range()))
    if (auto idx = vocab.index_of(g)) pairs.emplace_back(*idx, 1.0);
  auto v = SparseVector::from_unsorted(vocab.size(), std::move(pairs));
  return mode == FeatureMode::Binary ? v.binarized() : v;
}

// ---- n-gram language statistics -------------------------------------------

// Counts of order-n windows and their (n-1)-term histories, with add-one
// smoothing over the unigram vocabulary for p(w | h).
class NgramCounts {
public:
  static NgramCounts fit(const std::vector<std::vector<std::string>>& docs, std::size_t order = 2) {
    if (order < 2 || order > kMaxNgramArity) throw std::invalid_argument("NgramCounts: order must be 2 or 3");
    NgramCounts c;
    c.order_ = order;
    for (const auto& doc : docs) {
      for (const auto& g : ngrams(doc, 1)) c.words_.insert({g.terms[0], 0}).first->second++;
      for (const auto& g : ngrams(doc, order)) {
        std::vector<std::string> h(g.terms.begin(), g.terms.end() - 1);
        ++c.joint_[g.terms];
        ++c.history_[h];
      }
    }
    return c;
  }

  std::size_t order() const { return order_; }
  std::size_t vocabulary_size() const { return words_.size(); }

  std::size_t count(const std::vector<std::string>& history, const std::string& word) const {
    auto key = lowered(history);
    key.push_back(text::to_lower_utf8(word));
    auto it = joint_.find(key);
    return it == joint_.end() ? 0 : it->second;
  }

  std::size_t history_count(const std::vector<std::string>& history) const {
    auto it = history_.find(lowered(history));
    return it == history_.end() ? 0 : it->second;
  }

  // (count(h, w) + 1) / (count(h) + V)
  double prob(const std::vector<std::string>& history, const std::string& word) const {
    if (history.size() + 1 != order_) throw std::invalid_argument("ngram_prob: history length must be order - 1");
    if (words_.empty()) throw std::logic_error("ngram_prob: counts not fitted");
    return static_cast<double>(count(history, word) + 1) /
           static_cast<double>(history_count(history) + words_.size());
  }

  // Most probable next word after the history; ties go to the smaller word.
  std::pair<std::string, double> most_likely_next(const std::vector<std::string>& history) const {
    std::pair<std::string, double> best{"", -1.0};
    for (const auto& [w, _] : words_) {
      const double p = prob(history, w);
      if (p > best.second) best = {w, p};
    }
    return best;
  }

  std::vector<std::string> words() const {
    std::vector<std::string> out;
    for (const auto& [w, _] : words_) out.push_back(w);
    return out;
  }

private:
  static std::vector<std::string> lowered(const std::vector<std::string>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(text::to_lower_utf8(s));
    return out;
  }

  std::size_t order_ = 2;
  std::map<std::string, std::size_t> words_;
  std::map<std::vector<std::string>, std::size_t> joint_;
  std::map<std::vector<std::string>, std::size_t> history_;
};

inline double ngram_prob(const NgramCounts& counts, const std::vector<std::string>& history, const std::string& word) {
  return counts.prob(history, word);
}

}  // namespace revlens
