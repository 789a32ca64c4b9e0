#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "revlens/corpus.hpp"
#include "revlens/features.hpp"

namespace revlens {

enum class Algorithm : std::uint8_t {
  NaiveBayes = 0,
  MultinomialNB = 1,
  BernoulliNB = 2,
  LogisticRegression = 3,
  SGDClassifier = 4,
  LinearSVC = 5,
  NuSVC = 6,
};

inline constexpr std::array<Algorithm, 7> kAllAlgorithms = {
    Algorithm::NaiveBayes,         Algorithm::MultinomialNB, Algorithm::BernoulliNB, Algorithm::LogisticRegression,
    Algorithm::SGDClassifier,      Algorithm::LinearSVC,     Algorithm::NuSVC};

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::NaiveBayes: return "naive-bayes";
    case Algorithm::MultinomialNB: return "multinomial-nb";
    case Algorithm::BernoulliNB: return "bernoulli-nb";
    case Algorithm::LogisticRegression: return "logistic-regression";
    case Algorithm::SGDClassifier: return "sgd";
    case Algorithm::LinearSVC: return "linear-svc";
    case Algorithm::NuSVC: return "nu-svc";
  }
  throw std::logic_error("bad algorithm");
}

inline std::string_view display_name(Algorithm a) {
  switch (a) {
    case Algorithm::NaiveBayes: return "Naive Bayes";
    case Algorithm::MultinomialNB: return "Multinomial NB";
    case Algorithm::BernoulliNB: return "Bernoulli NB";
    case Algorithm::LogisticRegression: return "Logistic Regression";
    case Algorithm::SGDClassifier: return "SGD Classifier";
    case Algorithm::LinearSVC: return "Linear SVC";
    case Algorithm::NuSVC: return "Nu SVC";
  }
  throw std::logic_error("bad algorithm");
}

inline std::optional<Algorithm> try_parse_algorithm(std::string_view s) {
  for (auto a : kAllAlgorithms)
    if (to_string(a) == s) return a;
  return std::nullopt;
}

inline Algorithm parse_algorithm(std::string_view s) {
  if (auto a = try_parse_algorithm(s)) return *a;
  throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

inline bool is_naive_bayes(Algorithm a) {
  return a == Algorithm::NaiveBayes || a == Algorithm::MultinomialNB || a == Algorithm::BernoulliNB;
}

// Boolean-feature models see only presence, whatever the vector holds.
inline bool binarizes_input(Algorithm a) { return a == Algorithm::NaiveBayes || a == Algorithm::BernoulliNB; }

inline FeatureMode default_feature_mode(Algorithm a) {
  return binarizes_input(a) ? FeatureMode::Binary : FeatureMode::Counts;
}

enum class SgdLoss : std::uint8_t { Hinge = 0, Log = 1 };

inline std::string_view to_string(SgdLoss l) { return l == SgdLoss::Hinge ? "hinge" : "log"; }

inline SgdLoss parse_sgd_loss(std::string_view s) {
  if (s == "hinge") return SgdLoss::Hinge;
  if (s == "log") return SgdLoss::Log;
  throw std::invalid_argument("unknown SGD loss '" + std::string(s) + "'");
}

struct Hyperparams {
  double alpha = 1.0;
  double learning_rate = 0.1;
  std::size_t epochs = 50;
  double l2 = 1e-4;
  SgdLoss sgd_loss = SgdLoss::Hinge;
  double C = 1.0;
  double tolerance = 1e-3;
  std::size_t max_iter = 1000;
  double nu = 0.5;
  // Lower nu to the largest feasible value for each one-vs-rest problem
  // instead of failing.
  bool nu_clamp = false;
  std::uint64_t seed = 42;

  void validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
      throw std::invalid_argument("learning rate must be positive");
    if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (!(l2 >= 0.0) || !std::isfinite(l2)) throw std::invalid_argument("l2 must be non-negative");
    if (!(C > 0.0) || !std::isfinite(C)) throw std::invalid_argument("C must be positive");
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("nu must be in (0, 1]");
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["alpha"] = alpha;
    j["learning_rate"] = learning_rate;
    j["epochs"] = epochs;
    j["l2"] = l2;
    j["sgd_loss"] = std::string(to_string(sgd_loss));
    j["C"] = C;
    j["tolerance"] = tolerance;
    j["max_iter"] = max_iter;
    j["nu"] = nu;
    j["nu_clamp"] = nu_clamp;
    j["seed"] = seed;
    return j;
  }

  static Hyperparams from_json(const nlohmann::json& j) {
    Hyperparams h;
    h.alpha = j.value("alpha", h.alpha);
    h.learning_rate = j.value("learning_rate", h.learning_rate);
    h.epochs = j.value("epochs", h.epochs);
    h.l2 = j.value("l2", h.l2);
    if (j.contains("sgd_loss")) h.sgd_loss = parse_sgd_loss(j.at("sgd_loss").get<std::string>());
    h.C = j.value("C", h.C);
    h.tolerance = j.value("tolerance", h.tolerance);
    h.max_iter = j.value("max_iter", h.max_iter);
    h.nu = j.value("nu", h.nu);
    h.nu_clamp = j.value("nu_clamp", h.nu_clamp);
    h.seed = j.value("seed", h.seed);
    h.validate();
    return h;
  }
};

struct Example {
  SparseVector x;
  Label y;
};

class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Prediction {
  Label label;
  double confidence;
  std::map<Label, double> scores;  // softmax-normalized
};

// Every algorithm reduces to per-label linear scores over its (possibly
// binarized) input: score_l = bias_l + w_l . x. Naive Bayes variants keep
// log-priors in bias and log-likelihoods in weights; the Bernoulli model
// also keeps log(1 - p) for absent features.
struct TrainedModel {
  Algorithm algorithm = Algorithm::MultinomialNB;
  FeatureMode feature_mode = FeatureMode::Counts;
  std::vector<Label> labels;
  std::shared_ptr<const Vocabulary> vocabulary;
  std::vector<double> weights;  // labels.size() x dimension(), row-major
  std::vector<double> bias;
  std::vector<double> absent;   // BernoulliNB only, same shape as weights
  bool converged = true;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  std::size_t dimension() const { return vocabulary ? vocabulary->size() : 0; }

  std::span<const double> row(std::size_t l) const { return {weights.data() + l * dimension(), dimension()}; }
  std::span<const double> absent_row(std::size_t l) const { return {absent.data() + l * dimension(), dimension()}; }

  std::size_t label_position(Label l) const {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw ModelError("label " + std::string(to_string(l)) + " is not in the model");
    return static_cast<std::size_t>(it - labels.begin());
  }

  void validate() const {
    if (!vocabulary) throw ModelError("model has no vocabulary");
    if (labels.size() < 2) throw ModelError("model needs at least 2 labels");
    const std::size_t d = dimension();
    if (weights.size() != labels.size() * d) throw ModelError("weight matrix has wrong shape");
    if (bias.size() != labels.size()) throw ModelError("bias vector has wrong size");
    const bool want_absent = algorithm == Algorithm::BernoulliNB;
    if (want_absent ? absent.size() != weights.size() : !absent.empty())
      throw ModelError("absence table has wrong shape");
  }

  // Unnormalized per-label scores, in label order.
  std::vector<double> raw_scores(const SparseVector& v) const {
    if (v.dimension() != dimension())
      throw ModelError("vector dimension " + std::to_string(v.dimension()) + " does not match model vocabulary size " +
                       std::to_string(dimension()));
    const bool binary = binarizes_input(algorithm);
    std::vector<double> s(labels.size());
    for (std::size_t l = 0; l < labels.size(); ++l) {
      const double* w = weights.data() + l * dimension();
      double acc = bias[l];
      if (algorithm == Algorithm::BernoulliNB) {
        const double* a = absent.data() + l * dimension();
        acc += absent_sums_[l];
        for (const auto& [i, x] : v.entries()) acc += w[i] - a[i];
      } else {
        for (const auto& [i, x] : v.entries()) acc += (binary ? 1.0 : x) * w[i];
      }
      s[l] = acc;
    }
    return s;
  }

  // Must be called after the parameter tables are filled in.
  void finalize() {
    validate();
    absent_sums_.assign(labels.size(), 0.0);
    if (algorithm == Algorithm::BernoulliNB) {
      for (std::size_t l = 0; l < labels.size(); ++l) {
        double s = 0.0;
        for (double a : absent_row(l)) s += a;
        absent_sums_[l] = s;
      }
    }
  }

private:
  std::vector<double> absent_sums_;
};

inline std::vector<double> softmax(const std::vector<double>& raw) {
  if (raw.empty()) return {};
  const double m = *std::max_element(raw.begin(), raw.end());
  std::vector<double> out(raw.size());
  double z = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = std::exp(raw[i] - m);
    z += out[i];
  }
  for (auto& o : out) o /= z;
  return out;
}

// Ties go to the earliest label in model order.
inline Prediction predict(const TrainedModel& model, const SparseVector& v) {
  const auto raw = model.raw_scores(v);
  const auto p = softmax(raw);
  std::size_t best = 0;
  for (std::size_t l = 1; l < raw.size(); ++l)
    if (raw[l] > raw[best]) best = l;
  Prediction out{model.labels[best], p[best], {}};
  for (std::size_t l = 0; l < raw.size(); ++l) out.scores[model.labels[l]] = p[l];
  return out;
}

}  // namespace revlens
