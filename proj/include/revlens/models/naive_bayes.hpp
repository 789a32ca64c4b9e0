#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "revlens/models/model.hpp"

namespace revlens {

namespace detail {

inline std::vector<double> class_log_priors(const std::vector<std::size_t>& y, std::size_t n_labels) {
  std::vector<double> counts(n_labels, 0.0);
  for (auto c : y) counts[c] += 1.0;
  std::vector<double> out(n_labels);
  for (std::size_t l = 0; l < n_labels; ++l) out[l] = std::log(counts[l] / static_cast<double>(y.size()));
  return out;
}

// log P(w|c) = log((count(w,c) + alpha) / (sum_w count(w,c) + alpha |V|))
inline void fit_multinomial_nb(TrainedModel& m, const std::vector<Example>& data, const std::vector<std::size_t>& y,
                               double alpha) {
  const std::size_t L = m.labels.size(), d = m.dimension();
  std::vector<double> counts(L * d, 0.0), totals(L, 0.0);
  for (std::size_t n = 0; n < data.size(); ++n) {
    for (const auto& [i, x] : data[n].x.entries()) {
      counts[y[n] * d + i] += x;
      totals[y[n]] += x;
    }
  }
  m.bias = class_log_priors(y, L);
  m.weights.assign(L * d, 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    const double denom = std::log(totals[l] + alpha * static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) m.weights[l * d + i] = std::log(counts[l * d + i] + alpha) - denom;
  }
}

// P(present|c) = (docs of c containing w + alpha) / (docs of c + 2 alpha)
inline void fit_presence_nb(TrainedModel& m, const std::vector<Example>& data, const std::vector<std::size_t>& y,
                            double alpha, bool with_absence) {
  const std::size_t L = m.labels.size(), d = m.dimension();
  std::vector<double> df(L * d, 0.0), docs(L, 0.0);
  for (std::size_t n = 0; n < data.size(); ++n) {
    docs[y[n]] += 1.0;
    for (const auto& e : data[n].x.entries()) df[y[n] * d + e.first] += 1.0;
  }
  m.bias = class_log_priors(y, L);
  m.weights.assign(L * d, 0.0);
  if (with_absence) m.absent.assign(L * d, 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    const double denom = docs[l] + 2.0 * alpha;
    for (std::size_t i = 0; i < d; ++i) {
      const double p = (df[l * d + i] + alpha) / denom;
      m.weights[l * d + i] = std::log(p);
      if (with_absence) m.absent[l * d + i] = std::log1p(-p);
    }
  }
}

}  // namespace detail

struct InformativeFeature {
  std::string feature;
  Label label;        // label with the highest likelihood
  double ratio;       // max over labels / min over labels
  double share;       // max / sum over labels, as a percentage
};

// Features ranked by how unevenly their class-conditional likelihood is
// spread across labels. Ties are broken by feature string.
inline std::vector<InformativeFeature> most_informative_features(const TrainedModel& model, std::size_t k) {
  if (!is_naive_bayes(model.algorithm))
    throw ModelError("most informative features need a naive Bayes model, got " + std::string(to_string(model.algorithm)));
  const std::size_t L = model.labels.size(), d = model.dimension();
  std::vector<InformativeFeature> all;
  all.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    double lo = model.weights[i], hi = model.weights[i], sum = 0.0;
    std::size_t arg = 0;
    for (std::size_t l = 0; l < L; ++l) {
      const double w = model.weights[l * d + i];
      if (w > hi) {
        hi = w;
        arg = l;
      }
      lo = std::min(lo, w);
      sum += std::exp(w);
    }
    all.push_back({model.vocabulary->term(i).to_string(), model.labels[arg], std::exp(hi - lo),
                   100.0 * std::exp(hi) / sum});
  }
  std::sort(all.begin(), all.end(), [](const InformativeFeature& a, const InformativeFeature& b) {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    return a.feature < b.feature;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

}  // namespace revlens
