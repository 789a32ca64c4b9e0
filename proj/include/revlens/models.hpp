#pragma once

#include <algorithm>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "revlens/io.hpp"
#include "revlens/models/linear.hpp"
#include "revlens/models/model.hpp"
#include "revlens/models/model_io.hpp"
#include "revlens/models/naive_bayes.hpp"
#include "revlens/models/nu_svm.hpp"

namespace revlens {

inline std::string hash_examples(const std::vector<Example>& data) {
  std::uint64_t h = fnv1a64("");
  ByteWriter w;
  for (const auto& e : data) {
    w.u8(static_cast<std::uint8_t>(e.y));
    w.u64(e.x.nnz());
    for (const auto& [i, v] : e.x.entries()) {
      w.u32(i);
      w.f64(v);
    }
    h = fnv1a64(w.bytes(), h);
    w = ByteWriter();
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Fits one model. With an explicit label list every listed label must
// occur in the data; otherwise the labels present are used in canonical
// order. Non-convergence is reported through TrainedModel::converged.
inline TrainedModel train(Algorithm algorithm, const std::vector<Example>& data,
                          std::shared_ptr<const Vocabulary> vocabulary, const Hyperparams& hp = {},
                          const std::vector<Label>& labels = {}) {
  hp.validate();
  if (!vocabulary) throw std::invalid_argument("train: vocabulary is required");
  if (data.empty()) throw ModelError("train: no training examples");
  for (const auto& e : data)
    if (e.x.dimension() != vocabulary->size())
      throw ModelError("train: vector dimension " + std::to_string(e.x.dimension()) +
                       " does not match vocabulary size " + std::to_string(vocabulary->size()));

  std::array<std::size_t, kAllLabels.size()> counts{};
  for (const auto& e : data) ++counts[label_index(e.y)];

  TrainedModel m;
  m.algorithm = algorithm;
  m.feature_mode = default_feature_mode(algorithm);
  m.vocabulary = std::move(vocabulary);
  if (labels.empty()) {
    for (auto l : kAllLabels)
      if (counts[label_index(l)] > 0) m.labels.push_back(l);
  } else {
    m.labels = labels;
    std::sort(m.labels.begin(), m.labels.end());
    if (std::adjacent_find(m.labels.begin(), m.labels.end()) != m.labels.end())
      throw std::invalid_argument("train: duplicate label in label list");
    for (auto l : m.labels)
      if (counts[label_index(l)] == 0)
        throw ModelError("train: label " + std::string(to_string(l)) + " is missing from the training data");
    for (auto l : kAllLabels)
      if (counts[label_index(l)] > 0 && std::find(m.labels.begin(), m.labels.end(), l) == m.labels.end())
        throw ModelError("train: training data has label " + std::string(to_string(l)) + " outside the label list");
  }
  if (m.labels.size() < 2) throw ModelError("train: need at least 2 distinct labels");

  std::vector<std::size_t> y(data.size());
  for (std::size_t n = 0; n < data.size(); ++n) y[n] = m.label_position(data[n].y);

  switch (algorithm) {
    case Algorithm::NaiveBayes: detail::fit_presence_nb(m, data, y, hp.alpha, false); break;
    case Algorithm::MultinomialNB: detail::fit_multinomial_nb(m, data, y, hp.alpha); break;
    case Algorithm::BernoulliNB: detail::fit_presence_nb(m, data, y, hp.alpha, true); break;
    case Algorithm::LogisticRegression: detail::fit_logistic(m, data, y, hp); break;
    case Algorithm::SGDClassifier: detail::fit_sgd(m, data, y, hp); break;
    case Algorithm::LinearSVC: detail::fit_linear_svc(m, data, y, hp); break;
    case Algorithm::NuSVC: detail::fit_nu_svc(m, data, y, hp); break;
  }

  m.metadata["hyperparams"] = hp.to_json();
  m.metadata["seed"] = hp.seed;
  m.metadata["data_hash"] = hash_examples(data);
  m.metadata["examples"] = data.size();
  m.metadata["converged"] = m.converged;
  m.finalize();
  return m;
}

}  // namespace revlens
