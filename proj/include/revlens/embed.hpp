#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "revlens/io.hpp"
#include "revlens/text.hpp"

namespace revlens {

struct EmbeddingConfig {
  std::size_t dimensions = 100;
  std::size_t window = 5;
  std::size_t negative_samples = 5;
  std::size_t epochs = 5;
  double initial_learning_rate = 0.025;
  std::size_t min_count = 2;
  std::uint64_t seed = 1;
  // >1 trains sentence shards concurrently with unsynchronized (relaxed
  // atomic) parameter updates; results then depend on scheduling.
  std::size_t threads = 1;

  void validate() const {
    if (dimensions < 2) throw std::invalid_argument("embedding dimensions must be >= 2");
    if (window < 1) throw std::invalid_argument("embedding window must be >= 1");
    if (negative_samples < 1) throw std::invalid_argument("negative samples must be >= 1");
    if (!(initial_learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
    if (min_count < 1) throw std::invalid_argument("min_count must be >= 1");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  }
};

template <class T>
double cosine(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw std::invalid_argument("cosine: dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    na += static_cast<double>(a[i]) * static_cast<double>(a[i]);
    nb += static_cast<double>(b[i]) * static_cast<double>(b[i]);
  }
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("cosine: zero-norm vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  return cosine<double>(std::span<const double>(a), std::span<const double>(b));
}

namespace detail {

inline double log_sigmoid(double x) { return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x)); }
inline double sigmoid(double x) { return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x)); }

template <bool Shared, class T>
inline T load(T& x) {
  if constexpr (Shared)
    return std::atomic_ref<T>(x).load(std::memory_order_relaxed);
  else
    return x;
}

template <bool Shared, class T>
inline void store(T& x, T v) {
  if constexpr (Shared)
    std::atomic_ref<T>(x).store(v, std::memory_order_relaxed);
  else
    x = v;
}

// One skip-gram negative-sampling step for a (center, context) pair.
// outputs[0] is the context word's output vector, outputs[1..] the sampled
// negatives. Loss: -log s(u0.v) - sum_k log s(-uk.v). Every output row is
// moved against its gradient using the pre-update center vector, then the
// center vector is moved using the pre-update output rows.
template <bool Shared = false, class T>
double sgns_step(T* center, std::span<T* const> outputs, std::size_t dim, double lr, std::vector<double>& work) {
  work.assign(dim, 0.0);
  double loss = 0.0;
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    T* u = outputs[k];
    double dot = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      dot += static_cast<double>(load<Shared>(u[i])) * static_cast<double>(load<Shared>(center[i]));
    const double label = k == 0 ? 1.0 : 0.0;
    loss -= k == 0 ? log_sigmoid(dot) : log_sigmoid(-dot);
    const double g = sigmoid(dot) - label;  // d loss / d dot
    for (std::size_t i = 0; i < dim; ++i) {
      const double ui = load<Shared>(u[i]);
      work[i] += g * ui;
      store<Shared>(u[i], static_cast<T>(ui - lr * g * static_cast<double>(load<Shared>(center[i]))));
    }
  }
  for (std::size_t i = 0; i < dim; ++i)
    store<Shared>(center[i], static_cast<T>(static_cast<double>(load<Shared>(center[i])) - lr * work[i]));
  return loss;
}

}  // namespace detail

// Per-pair SGNS loss, evaluated without touching any parameters.
inline double sgns_loss(const std::vector<double>& center, const std::vector<std::vector<double>>& outputs) {
  double loss = 0.0;
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    double dot = 0.0;
    for (std::size_t i = 0; i < center.size(); ++i) dot += outputs[k][i] * center[i];
    loss -= k == 0 ? detail::log_sigmoid(dot) : detail::log_sigmoid(-dot);
  }
  return loss;
}

struct SgnsGradient {
  std::vector<double> center;
  std::vector<std::vector<double>> outputs;
};

// Gradient read back from the training kernel: a unit-rate step moves each
// parameter by exactly minus its gradient.
inline SgnsGradient sgns_gradient(const std::vector<double>& center, const std::vector<std::vector<double>>& outputs) {
  auto c = center;
  auto o = outputs;
  std::vector<double*> rows;
  for (auto& r : o) rows.push_back(r.data());
  std::vector<double> work;
  detail::sgns_step<false, double>(c.data(), std::span<double* const>(rows), c.size(), 1.0, work);
  SgnsGradient g;
  g.center.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) g.center[i] = center[i] - c[i];
  g.outputs.resize(o.size());
  for (std::size_t k = 0; k < o.size(); ++k) {
    g.outputs[k].resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) g.outputs[k][i] = outputs[k][i] - o[k][i];
  }
  return g;
}

class EmbeddingModel {
public:
  static constexpr std::uint32_t kFormatVersion = 1;
  static constexpr std::string_view kMagic = "RVEM";

  EmbeddingModel() = default;

  EmbeddingModel(std::vector<std::string> words, std::size_t dim) : words_(std::move(words)), dim_(dim) {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (!index_.emplace(words_[i], i).second) throw std::invalid_argument("embedding vocabulary has duplicates");
    }
    input_.assign(words_.size() * dim_, 0.0f);
    output_.assign(words_.size() * dim_, 0.0f);
  }

  std::size_t size() const { return words_.size(); }
  std::size_t dimensions() const { return dim_; }
  const std::vector<std::string>& words() const { return words_; }
  bool trained() const { return trained_; }
  const std::vector<double>& epoch_losses() const { return epoch_losses_; }

  std::optional<std::size_t> index_of(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::span<const float> input_vector(std::size_t i) const { return {input_.data() + i * dim_, dim_}; }
  std::span<const float> output_vector(std::size_t i) const { return {output_.data() + i * dim_, dim_}; }

  std::span<const float> vector(const std::string& word) const {
    auto i = index_of(word);
    if (!i) throw std::out_of_range("word '" + word + "' is not in the embedding vocabulary");
    return input_vector(*i);
  }

  std::string serialize() const {
    ByteWriter w;
    w.raw(kMagic);
    w.u32(kFormatVersion);
    w.u32(static_cast<std::uint32_t>(words_.size()));
    w.u32(static_cast<std::uint32_t>(dim_));
    w.u32(trained_ ? 1u : 0u);
    for (const auto& s : words_) w.str(s);
    for (float f : input_) w.f32(f);
    for (float f : output_) w.f32(f);
    return w.take();
  }

  static EmbeddingModel deserialize(std::string_view bytes) {
    ByteReader r(bytes);
    if (r.remaining() < 4 || r.raw(4) != kMagic) throw IoError("embedding model: bad magic");
    const auto version = r.u32();
    if (version != kFormatVersion)
      throw IoError("embedding model: unsupported version " + std::to_string(version));
    const auto n = r.u32();
    const auto d = r.u32();
    const auto flags = r.u32();
    std::vector<std::string> words;
    words.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) words.push_back(r.str());
    EmbeddingModel m(std::move(words), d);
    m.trained_ = (flags & 1u) != 0;
    for (auto& f : m.input_) f = r.f32();
    for (auto& f : m.output_) f = r.f32();
    if (r.remaining() != 0) throw IoError("embedding model: trailing bytes");
    return m;
  }

  void save(const std::filesystem::path& path) const { atomic_write(path, serialize()); }
  static EmbeddingModel load(const std::filesystem::path& path) { return deserialize(read_file(path)); }

private:
  friend EmbeddingModel train_embeddings(const std::vector<std::vector<std::string>>&, const EmbeddingConfig&);

  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t dim_ = 0;
  std::vector<float> input_;
  std::vector<float> output_;
  bool trained_ = false;
  std::vector<double> epoch_losses_;
};

namespace detail {

// Alias-free sampler over unigram counts raised to the 3/4 power.
class UnigramSampler {
public:
  explicit UnigramSampler(const std::vector<std::size_t>& counts) {
    cumulative_.reserve(counts.size());
    double total = 0.0;
    for (auto c : counts) {
      total += std::pow(static_cast<double>(c), 0.75);
      cumulative_.push_back(total);
    }
    for (auto& c : cumulative_) c /= total;
  }

  std::size_t sample(Rng& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<std::size_t>(it - cumulative_.begin());
  }

private:
  std::vector<double> cumulative_;
};

}  // namespace detail

// Skip-gram with negative sampling. Vocabulary order is descending
// frequency, ties broken lexicographically. Learning rate decays linearly
// from the initial rate to 1e-4 of it over all epochs.
inline EmbeddingModel train_embeddings(const std::vector<std::vector<std::string>>& sentences,
                                       const EmbeddingConfig& config) {
  config.validate();
  std::map<std::string, std::size_t> freq;
  for (const auto& s : sentences)
    for (const auto& w : s) ++freq[w];
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (const auto& [w, c] : freq)
    if (c >= config.min_count) kept.emplace_back(w, c);
  if (kept.size() < 2)
    throw std::invalid_argument("train_embeddings: need at least 2 distinct words meeting min_count");
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

  std::vector<std::string> words;
  std::vector<std::size_t> counts;
  for (auto& [w, c] : kept) {
    words.push_back(w);
    counts.push_back(c);
  }
  EmbeddingModel model(std::move(words), config.dimensions);
  const std::size_t dim = config.dimensions;

  Rng init_rng(config.seed);
  for (auto& f : model.input_) f = static_cast<float>((init_rng.uniform() - 0.5) / static_cast<double>(dim));

  std::vector<std::vector<std::size_t>> encoded;
  std::size_t total_words = 0;
  for (const auto& s : sentences) {
    std::vector<std::size_t> ids;
    for (const auto& w : s)
      if (auto i = model.index_of(w)) ids.push_back(*i);
    total_words += ids.size();
    if (ids.size() >= 2) encoded.push_back(std::move(ids));
  }

  if (config.epochs == 0) return model;

  const detail::UnigramSampler sampler(counts);
  const double lr0 = config.initial_learning_rate;
  const double schedule_total = static_cast<double>(total_words * config.epochs) + 1.0;
  std::atomic<std::size_t> processed{0};

  auto run_shard = [&]<bool Shared>(std::size_t begin, std::size_t end, Rng& rng, double& loss_sum,
                                    std::size_t& pairs) {
    std::vector<double> work;
    std::vector<float*> rows(config.negative_samples + 1);
    for (std::size_t s = begin; s < end; ++s) {
      const auto& sent = encoded[s];
      for (std::size_t pos = 0; pos < sent.size(); ++pos) {
        const double progress = static_cast<double>(processed.fetch_add(1, std::memory_order_relaxed)) / schedule_total;
        const double lr = lr0 * std::max(1e-4, 1.0 - progress);
        const std::size_t reduced = config.window - static_cast<std::size_t>(rng.below(config.window));
        const std::size_t lo = pos >= reduced ? pos - reduced : 0;
        const std::size_t hi = std::min(sent.size() - 1, pos + reduced);
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          const std::size_t center = sent[pos];
          const std::size_t context = sent[c];
          std::size_t used = 0;
          rows[used++] = model.output_.data() + context * dim;
          for (std::size_t k = 0; k < config.negative_samples; ++k) {
            const auto neg = sampler.sample(rng);
            if (neg == context) continue;
            rows[used++] = model.output_.data() + neg * dim;
          }
          loss_sum += detail::sgns_step<Shared, float>(model.input_.data() + center * dim,
                                                       std::span<float* const>(rows.data(), used), dim, lr, work);
          ++pairs;
        }
      }
    }
  };

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    double loss_sum = 0.0;
    std::size_t pairs = 0;
    if (config.threads <= 1) {
      Rng rng(config.seed ^ (0x9E3779B97F4A7C15ull * (epoch + 1)));
      run_shard.template operator()<false>(0, encoded.size(), rng, loss_sum, pairs);
    } else {
      const std::size_t t = std::min(config.threads, std::max<std::size_t>(1, encoded.size()));
      std::vector<double> losses(t, 0.0);
      std::vector<std::size_t> counts_per(t, 0);
      std::vector<std::thread> pool;
      for (std::size_t k = 0; k < t; ++k) {
        pool.emplace_back([&, k] {
          Rng rng(config.seed ^ (0x9E3779B97F4A7C15ull * (epoch + 1)) ^ (0xBF58476D1CE4E5B9ull * (k + 1)));
          const std::size_t b = encoded.size() * k / t, e = encoded.size() * (k + 1) / t;
          run_shard.template operator()<true>(b, e, rng, losses[k], counts_per[k]);
        });
      }
      for (auto& th : pool) th.join();
      for (std::size_t k = 0; k < t; ++k) {
        loss_sum += losses[k];
        pairs += counts_per[k];
      }
    }
    model.epoch_losses_.push_back(pairs ? loss_sum / static_cast<double>(pairs) : 0.0);
  }
  model.trained_ = true;
  return model;
}

// Nearest words by cosine similarity of input vectors, excluding the query.
inline std::vector<std::pair<std::string, double>> most_similar(const EmbeddingModel& model, const std::string& word,
                                                                std::size_t topn = 10) {
  const auto q = model.index_of(word);
  if (!q) throw std::out_of_range("word '" + word + "' is not in the embedding vocabulary");
  const auto qv = model.input_vector(*q);
  std::vector<std::pair<std::string, double>> scored;
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (i == *q) continue;
    scored.emplace_back(model.words()[i], cosine<float>(qv, model.input_vector(i)));
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (scored.size() > topn) scored.resize(topn);
  return scored;
}

}  // namespace revlens
