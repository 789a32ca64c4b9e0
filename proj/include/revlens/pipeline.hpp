#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "revlens/corpus.hpp"
#include "revlens/features.hpp"
#include "revlens/models.hpp"
#include "revlens/preprocess.hpp"

namespace revlens {

struct FeatureOptions {
  PreprocessConfig preprocess;
  NgramRange ngrams{1, 2};
  std::size_t min_count = 1;
  std::optional<FeatureMode> mode;  // unset: per-algorithm default
};

inline std::vector<std::vector<std::string>> preprocess_corpus(const Corpus& corpus, const PreprocessConfig& config) {
  std::vector<std::vector<std::string>> docs;
  docs.reserve(corpus.size());
  for (const auto& e : corpus) docs.push_back(preprocess(e.comment.body, config));
  return docs;
}

inline std::vector<Example> make_examples(const Corpus& corpus, const std::vector<std::vector<std::string>>& docs,
                                          const Vocabulary& vocab, FeatureMode mode) {
  std::vector<Example> out;
  out.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& e = corpus[i];
    if (!e.label) throw CorpusError("comment '" + e.comment.id + "' has no label");
    out.push_back({vectorize(docs[i], vocab, mode), *e.label});
  }
  return out;
}

// Preprocesses, fits the vocabulary on this corpus and trains one model.
// The preprocessing configuration travels in the model metadata so that
// classification repeats the same pipeline.
inline TrainedModel train_on_corpus(const Corpus& corpus, Algorithm algorithm, const Hyperparams& hp = {},
                                    const FeatureOptions& features = {}) {
  if (corpus.empty()) throw CorpusError("cannot train on an empty corpus");
  const auto docs = preprocess_corpus(corpus, features.preprocess);
  auto vocab = std::make_shared<const Vocabulary>(fit_vocabulary(docs, features.ngrams, features.min_count));
  const FeatureMode mode = features.mode.value_or(default_feature_mode(algorithm));
  auto model = train(algorithm, make_examples(corpus, docs, *vocab, mode), vocab, hp);
  model.feature_mode = mode;
  model.metadata["feature_mode"] = std::string(to_string(mode));
  model.metadata["preprocess"] = features.preprocess.to_json();
  return model;
}

inline PreprocessConfig model_preprocess_config(const TrainedModel& model) {
  if (auto it = model.metadata.find("preprocess"); it != model.metadata.end())
    return PreprocessConfig::from_json(nlohmann::json::parse(it->dump()));
  return {};
}

inline SparseVector featurize(const TrainedModel& model, std::string_view text, const PreprocessConfig& config) {
  return vectorize(preprocess(text, config), *model.vocabulary, model.feature_mode);
}

inline Prediction classify_text(const TrainedModel& model, std::string_view text) {
  return predict(model, featurize(model, text, model_preprocess_config(model)));
}

}  // namespace revlens
