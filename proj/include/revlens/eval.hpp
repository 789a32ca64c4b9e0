#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <future>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "revlens/corpus.hpp"
#include "revlens/models.hpp"
#include "revlens/pipeline.hpp"

namespace revlens {

// ---- metrics --------------------------------------------------------------

struct ConfusionMatrix {
  std::vector<Label> labels;
  std::vector<std::vector<std::size_t>> counts;  // [true][predicted]

  std::size_t index_of(Label l) const {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw std::invalid_argument("label " + std::string(to_string(l)) + " not in confusion matrix");
    return static_cast<std::size_t>(it - labels.begin());
  }

  std::size_t at(Label truth, Label predicted) const { return counts[index_of(truth)][index_of(predicted)]; }

  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& row : counts)
      for (auto c : row) t += c;
    return t;
  }

  std::size_t trace() const {
    std::size_t t = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
    return t;
  }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

inline ConfusionMatrix confusion(const std::vector<std::pair<Label, Label>>& pairs,
                                 const std::vector<Label>& labels = {kAllLabels.begin(), kAllLabels.end()}) {
  if (pairs.empty()) throw std::invalid_argument("confusion: no predictions");
  ConfusionMatrix cm{labels, std::vector<std::vector<std::size_t>>(labels.size(), std::vector<std::size_t>(labels.size(), 0))};
  for (const auto& [t, p] : pairs) ++cm.counts[cm.index_of(t)][cm.index_of(p)];
  return cm;
}

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  friend bool operator==(const Prf&, const Prf&) = default;
};

inline double safe_ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

// One-vs-rest scores for a label; every 0/0 is taken as 0.
inline Prf precision_recall_f1(const ConfusionMatrix& cm, Label label) {
  const std::size_t k = cm.index_of(label);
  std::size_t predicted = 0, actual = 0;
  for (std::size_t i = 0; i < cm.labels.size(); ++i) {
    predicted += cm.counts[i][k];
    actual += cm.counts[k][i];
  }
  const double tp = static_cast<double>(cm.counts[k][k]);
  Prf out;
  out.precision = safe_ratio(tp, static_cast<double>(predicted));
  out.recall = safe_ratio(tp, static_cast<double>(actual));
  out.f1 = safe_ratio(2.0 * out.precision * out.recall, out.precision + out.recall);
  return out;
}

inline double accuracy(const ConfusionMatrix& cm) {
  return static_cast<double>(cm.trace()) / static_cast<double>(cm.total());
}

inline double micro_recall(const ConfusionMatrix& cm) {
  double tp = 0.0, actual = 0.0;
  for (std::size_t k = 0; k < cm.labels.size(); ++k) {
    tp += static_cast<double>(cm.counts[k][k]);
    for (auto c : cm.counts[k]) actual += static_cast<double>(c);
  }
  return safe_ratio(tp, actual);
}

// ---- benchmark --------------------------------------------------------------

struct EvalOptions {
  SplitOptions split{};
  Hyperparams hyperparams = [] {
    Hyperparams h;
    h.nu_clamp = true;
    return h;
  }();
  FeatureOptions features{};
  std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
  bool concurrent = false;
  bool timing = false;
  std::size_t informative_features = 10;
};

struct AlgorithmResult {
  Algorithm algorithm;
  double accuracy = 0.0;
  std::map<Label, Prf> per_label;
  ConfusionMatrix confusion;
  bool converged = true;
  std::optional<double> wall_time_ms;
  std::vector<InformativeFeature> informative;
};

struct EvalReport {
  static constexpr int kVersion = 1;
  SplitOptions split;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::size_t vocabulary_size = 0;
  std::vector<Label> labels;  // labels in the confusion matrices
  Label majority_label = Label::SystemGenerated;
  double baseline_accuracy = 0.0;  // always predicting the majority train label
  std::map<Label, std::size_t> test_label_counts;
  std::map<std::string, std::map<Label, std::size_t>> project_labels;
  std::vector<AlgorithmResult> results;
  std::vector<std::string> warnings;

  const AlgorithmResult& result(Algorithm a) const {
    for (const auto& r : results)
      if (r.algorithm == a) return r;
    throw std::out_of_range("no result for " + std::string(to_string(a)));
  }
};

// Algorithms by descending accuracy; ties keep the canonical order.
inline std::vector<Algorithm> ranking(const EvalReport& report) {
  std::vector<const AlgorithmResult*> rs;
  for (const auto& r : report.results) rs.push_back(&r);
  std::stable_sort(rs.begin(), rs.end(), [](auto* a, auto* b) { return a->accuracy > b->accuracy; });
  std::vector<Algorithm> out;
  for (auto* r : rs) out.push_back(r->algorithm);
  return out;
}

inline std::map<Label, std::size_t> count_labels(const Corpus& c) {
  std::map<Label, std::size_t> out;
  for (const auto& e : c)
    if (e.label) ++out[*e.label];
  return out;
}

// Split, preprocess, fit the vocabulary on the training side only, then
// train and score every requested algorithm on the same vectors.
inline EvalReport benchmark(const Corpus& corpus, const EvalOptions& options = {}) {
  if (!corpus.fully_labeled()) throw CorpusError("benchmark needs a fully labeled corpus");
  const auto parts = split(corpus, options.split);
  EvalReport report;
  report.split = options.split;
  report.train_size = parts.train.size();
  report.test_size = parts.test.size();
  if (parts.test.empty()) throw CorpusError("benchmark: test split is empty");

  const auto train_counts = count_labels(parts.train);
  report.test_label_counts = count_labels(parts.test);
  for (const auto& e : corpus) ++report.project_labels[e.comment.project][*e.label];

  std::vector<Label> train_labels;
  for (auto l : kAllLabels)
    if (train_counts.count(l)) train_labels.push_back(l);
  for (auto l : kAllLabels) {
    const bool in_train = train_counts.count(l) != 0, in_test = report.test_label_counts.count(l) != 0;
    if (in_train || in_test) report.labels.push_back(l);
    if (!in_train && in_test)
      report.warnings.push_back("label " + std::string(to_string(l)) +
                                " appears only in the test split; it can never be predicted and its metrics are 0");
  }

  std::size_t best = 0;
  for (const auto& [l, c] : train_counts)
    if (c > best) {
      best = c;
      report.majority_label = l;
    }
  const auto maj = report.test_label_counts.find(report.majority_label);
  report.baseline_accuracy = safe_ratio(maj == report.test_label_counts.end() ? 0.0 : static_cast<double>(maj->second),
                                        static_cast<double>(parts.test.size()));

  const auto train_docs = preprocess_corpus(parts.train, options.features.preprocess);
  const auto test_docs = preprocess_corpus(parts.test, options.features.preprocess);
  auto vocab =
      std::make_shared<const Vocabulary>(fit_vocabulary(train_docs, options.features.ngrams, options.features.min_count));
  report.vocabulary_size = vocab->size();

  std::map<FeatureMode, std::pair<std::vector<Example>, std::vector<Example>>> sets;
  for (auto a : options.algorithms) {
    const auto mode = options.features.mode.value_or(default_feature_mode(a));
    if (!sets.count(mode))
      sets[mode] = {make_examples(parts.train, train_docs, *vocab, mode),
                    make_examples(parts.test, test_docs, *vocab, mode)};
  }

  auto run = [&](Algorithm a) {
    const auto mode = options.features.mode.value_or(default_feature_mode(a));
    const auto& [train_set, test_set] = sets.at(mode);
    const auto t0 = std::chrono::steady_clock::now();
    auto model = train(a, train_set, vocab, options.hyperparams, train_labels);
    std::vector<std::pair<Label, Label>> pairs;
    pairs.reserve(test_set.size());
    for (const auto& e : test_set) pairs.emplace_back(e.y, predict(model, e.x).label);
    const auto t1 = std::chrono::steady_clock::now();
    AlgorithmResult r{a, 0.0, {}, confusion(pairs, report.labels), model.converged, std::nullopt, {}};
    r.accuracy = accuracy(r.confusion);
    for (auto l : report.labels) r.per_label[l] = precision_recall_f1(r.confusion, l);
    if (options.timing) r.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (is_naive_bayes(a) && options.informative_features > 0)
      r.informative = most_informative_features(model, options.informative_features);
    std::vector<std::string> notes;
    if (!model.converged) notes.push_back(std::string(to_string(a)) + " did not converge within its iteration budget");
    if (auto it = model.metadata.find("nu_effective"); it != model.metadata.end())
      for (const auto& [label, nu] : it->items())
        if (nu.get<double>() < options.hyperparams.nu)
          notes.push_back("nu-svc: nu lowered to " + nu.dump() + " for label " + label + " (class balance)");
    return std::make_pair(std::move(r), std::move(notes));
  };

  std::vector<std::pair<AlgorithmResult, std::vector<std::string>>> outcomes;
  if (options.concurrent) {
    std::vector<std::future<std::pair<AlgorithmResult, std::vector<std::string>>>> futures;
    for (auto a : options.algorithms) futures.push_back(std::async(std::launch::async, run, a));
    for (auto& f : futures) outcomes.push_back(f.get());
  } else {
    for (auto a : options.algorithms) outcomes.push_back(run(a));
  }
  for (auto& [r, notes] : outcomes) {
    report.results.push_back(std::move(r));
    for (auto& n : notes) report.warnings.push_back(std::move(n));
  }
  return report;
}

// ---- reports ----------------------------------------------------------------

inline nlohmann::ordered_json report_json(const EvalReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["version"] = EvalReport::kVersion;
  j["split"] = {{"train_fraction", report.split.train_fraction},
                {"seed", report.split.seed},
                {"stratified", report.split.stratified},
                {"train", report.train_size},
                {"test", report.test_size}};
  j["vocabulary_size"] = report.vocabulary_size;
  ordered_json labels = ordered_json::array();
  for (auto l : report.labels) labels.push_back(std::string(to_string(l)));
  j["labels"] = labels;
  j["baseline"] = {{"label", std::string(to_string(report.majority_label))}, {"accuracy", report.baseline_accuracy}};
  ordered_json support = ordered_json::object();
  for (const auto& [l, c] : report.test_label_counts) support[std::string(to_string(l))] = c;
  j["support"] = support;
  ordered_json projects = ordered_json::object();
  for (const auto& [p, counts] : report.project_labels) {
    ordered_json row = ordered_json::object();
    for (const auto& [l, c] : counts) row[std::string(to_string(l))] = c;
    projects[p] = row;
  }
  j["projects"] = projects;

  ordered_json algos = ordered_json::object();
  for (const auto& r : report.results) {
    ordered_json a;
    a["accuracy"] = r.accuracy;
    ordered_json per = ordered_json::object();
    for (auto l : report.labels) {
      const auto& m = r.per_label.at(l);
      per[std::string(to_string(l))] = {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
    }
    a["per_label"] = per;
    a["confusion"] = r.confusion.counts;
    a["converged"] = r.converged;
    a["wall_time_ms"] = r.wall_time_ms ? ordered_json(*r.wall_time_ms) : ordered_json(nullptr);
    if (!r.informative.empty()) {
      ordered_json feats = ordered_json::array();
      for (const auto& f : r.informative)
        feats.push_back({{"feature", f.feature},
                         {"label", std::string(to_string(f.label))},
                         {"ratio", f.ratio},
                         {"share", f.share}});
      a["informative_features"] = feats;
    }
    algos[std::string(to_string(r.algorithm))] = a;
  }
  j["algorithms"] = algos;
  ordered_json rank = ordered_json::array();
  for (auto a : ranking(report)) rank.push_back(std::string(to_string(a)));
  j["ranking"] = rank;
  j["warnings"] = report.warnings;
  return j;
}

// Rebuilds a report from its JSON form, for re-rendering as text.
inline EvalReport report_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("version")) throw std::invalid_argument("not an evaluation report");
  if (j.at("version").get<int>() != EvalReport::kVersion)
    throw std::invalid_argument("unsupported report version " + j.at("version").dump());
  EvalReport r;
  const auto& sp = j.at("split");
  r.split.train_fraction = sp.at("train_fraction").get<double>();
  r.split.seed = sp.at("seed").get<std::uint64_t>();
  r.split.stratified = sp.at("stratified").get<bool>();
  r.train_size = sp.at("train").get<std::size_t>();
  r.test_size = sp.at("test").get<std::size_t>();
  r.vocabulary_size = j.at("vocabulary_size").get<std::size_t>();
  for (const auto& l : j.at("labels")) r.labels.push_back(parse_label(l.get<std::string>()));
  r.majority_label = parse_label(j.at("baseline").at("label").get<std::string>());
  r.baseline_accuracy = j.at("baseline").at("accuracy").get<double>();
  for (const auto& [l, c] : j.at("support").items()) r.test_label_counts[parse_label(l)] = c.get<std::size_t>();
  for (const auto& [p, row] : j.at("projects").items())
    for (const auto& [l, c] : row.items()) r.project_labels[p][parse_label(l)] = c.get<std::size_t>();
  for (const auto& [name, a] : j.at("algorithms").items()) {
    AlgorithmResult res{parse_algorithm(name), a.at("accuracy").get<double>(), {}, {}, a.at("converged").get<bool>(),
                        std::nullopt, {}};
    for (const auto& [l, m] : a.at("per_label").items())
      res.per_label[parse_label(l)] = {m.at("precision").get<double>(), m.at("recall").get<double>(),
                                       m.at("f1").get<double>()};
    res.confusion = {r.labels, a.at("confusion").get<std::vector<std::vector<std::size_t>>>()};
    if (!a.at("wall_time_ms").is_null()) res.wall_time_ms = a.at("wall_time_ms").get<double>();
    if (a.contains("informative_features"))
      for (const auto& f : a.at("informative_features"))
        res.informative.push_back({f.at("feature").get<std::string>(), parse_label(f.at("label").get<std::string>()),
                                   f.at("ratio").get<double>(), f.at("share").get<double>()});
    r.results.push_back(std::move(res));
  }
  std::sort(r.results.begin(), r.results.end(), [](const auto& a, const auto& b) { return a.algorithm < b.algorithm; });
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

namespace detail {

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

inline std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

}  // namespace detail

inline std::string report_text(const EvalReport& report) {
  using detail::fmt;
  using detail::pad;
  std::ostringstream o;
  o << "Split: " << report.train_size << " train / " << report.test_size << " test (fraction "
    << fmt("%.2f", report.split.train_fraction) << ", seed " << report.split.seed << ")\n";
  o << "Vocabulary: " << report.vocabulary_size << " n-grams\n\n";

  o << "Comments per project\n";
  o << pad("Project", 28);
  for (auto l : kAllLabels) o << pad(std::string(to_string(l)), 20);
  o << "Total\n";
  for (const auto& [project, counts] : report.project_labels) {
    std::size_t total = 0;
    o << pad(project, 28);
    for (auto l : kAllLabels) {
      const auto it = counts.find(l);
      const std::size_t c = it == counts.end() ? 0 : it->second;
      total += c;
      o << pad(std::to_string(c), 20);
    }
    o << total << "\n";
  }

  o << "\nAccuracy\n";
  for (auto a : ranking(report)) {
    const auto& r = report.result(a);
    o << pad(std::string(display_name(a)), 24) << fmt("%6.2f%%", 100.0 * r.accuracy) << (r.converged ? "" : "  (not converged)")
      << "\n";
  }
  o << pad("Majority baseline", 24) << fmt("%6.2f%%", 100.0 * report.baseline_accuracy) << "  ("
    << to_string(report.majority_label) << ")\n";

  for (const auto& r : report.results) {
    o << "\n" << display_name(r.algorithm) << "\n";
    o << pad("Label", 22) << pad("Precision", 11) << pad("Recall", 11) << pad("F-measure", 11) << "Support\n";
    for (auto l : report.labels) {
      const auto& m = r.per_label.at(l);
      const auto it = report.test_label_counts.find(l);
      o << pad(std::string(to_string(l)), 22) << pad(fmt("%.2f", m.precision), 11) << pad(fmt("%.2f", m.recall), 11)
        << pad(fmt("%.2f", m.f1), 11) << (it == report.test_label_counts.end() ? 0 : it->second) << "\n";
    }
    o << "Confusion (rows true, columns predicted)\n";
    for (std::size_t i = 0; i < report.labels.size(); ++i) {
      o << pad(std::string(to_string(report.labels[i])), 22);
      for (auto c : r.confusion.counts[i]) o << pad(std::to_string(c), 8);
      o << "\n";
    }
    if (!r.informative.empty()) {
      o << "Most informative features\n";
      for (const auto& f : r.informative)
        o << pad(f.feature, 24) << pad(std::string(to_string(f.label)), 22) << fmt("%.1f", f.ratio) << " : 1  ("
          << fmt("%.1f", f.share) << "%)\n";
    }
  }
  if (!report.warnings.empty()) {
    o << "\nWarnings\n";
    for (const auto& w : report.warnings) o << "  " << w << "\n";
  }
  return o.str();
}

}  // namespace revlens
