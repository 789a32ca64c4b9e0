#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the library's training or metric code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "revlens/corpus.hpp"
#include "revlens/features.hpp"
#include "revlens/models/model.hpp"

namespace revlens::testing {

// ---- random toy data ------------------------------------------------------

struct DenseProblem {
  std::size_t dim = 0;
  std::vector<std::vector<int>> x;  // N x dim non-negative counts
  std::vector<Label> y;
};

inline std::shared_ptr<const Vocabulary> toy_vocabulary(std::size_t dim) {
  std::vector<std::string> words;
  for (std::size_t i = 0; i < dim; ++i) words.push_back("w" + std::string(1, static_cast<char>('a' + i)));
  return std::make_shared<const Vocabulary>(fit_vocabulary({words}, {1, 1}, 1));
}

inline SparseVector to_sparse(const std::vector<int>& dense) {
  std::vector<SparseVector::Entry> e;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] > 0) e.emplace_back(static_cast<std::uint32_t>(i), static_cast<double>(dense[i]));
  return SparseVector(dense.size(), std::move(e));
}

inline std::vector<Example> to_examples(const DenseProblem& p) {
  std::vector<Example> out;
  for (std::size_t n = 0; n < p.x.size(); ++n) out.push_back({to_sparse(p.x[n]), p.y[n]});
  return out;
}

// Every label in the chosen subset gets at least one document.
inline DenseProblem random_problem(std::mt19937_64& rng, std::size_t max_dim = 10, std::size_t max_n = 20,
                                   std::size_t min_labels = 2, std::size_t max_labels = 4) {
  std::uniform_int_distribution<std::size_t> dim_d(1, max_dim), lab_d(min_labels, max_labels);
  DenseProblem p;
  p.dim = dim_d(rng);
  const std::size_t L = lab_d(rng);
  std::uniform_int_distribution<std::size_t> n_d(L, max_n);
  const std::size_t n = n_d(rng);
  std::vector<Label> pool(kAllLabels.begin(), kAllLabels.end());
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(L);
  std::uniform_int_distribution<int> count_d(0, 3);
  std::uniform_int_distribution<std::size_t> pick(0, L - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> row(p.dim);
    for (auto& c : row) c = count_d(rng);
    p.x.push_back(std::move(row));
    p.y.push_back(i < L ? pool[i] : pool[pick(rng)]);
  }
  return p;
}

inline std::vector<int> random_row(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_int_distribution<int> count_d(0, 3);
  std::vector<int> row(dim);
  for (auto& c : row) c = count_d(rng);
  return row;
}

// ---- Bayes oracle -----------------------------------------------------------

enum class BayesKind { Multinomial, Bernoulli, PresenceOnly };

// Posterior over the labels present in p, from explicit products of
// smoothed probabilities.
inline std::map<Label, double> bayes_posterior(const DenseProblem& p, const std::vector<int>& query, double alpha,
                                               BayesKind kind) {
  std::map<Label, double> joint;
  std::map<Label, std::size_t> docs;
  for (auto l : p.y) ++docs[l];
  for (const auto& [label, nc] : docs) {
    double prob = static_cast<double>(nc) / static_cast<double>(p.y.size());
    if (kind == BayesKind::Multinomial) {
      std::vector<double> cnt(p.dim, 0.0);
      double total = 0.0;
      for (std::size_t n = 0; n < p.x.size(); ++n) {
        if (p.y[n] != label) continue;
        for (std::size_t i = 0; i < p.dim; ++i) {
          cnt[i] += p.x[n][i];
          total += p.x[n][i];
        }
      }
      for (std::size_t i = 0; i < p.dim; ++i) {
        const double pw = (cnt[i] + alpha) / (total + alpha * static_cast<double>(p.dim));
        for (int k = 0; k < query[i]; ++k) prob *= pw;
      }
    } else {
      for (std::size_t i = 0; i < p.dim; ++i) {
        double df = 0.0;
        for (std::size_t n = 0; n < p.x.size(); ++n)
          if (p.y[n] == label && p.x[n][i] > 0) df += 1.0;
        const double pw = (df + alpha) / (static_cast<double>(nc) + 2.0 * alpha);
        if (query[i] > 0) prob *= pw;
        else if (kind == BayesKind::Bernoulli) prob *= 1.0 - pw;
      }
    }
    joint[label] = prob;
  }
  double z = 0.0;
  for (const auto& [l, v] : joint) z += v;
  for (auto& [l, v] : joint) v /= z;
  return joint;
}

// ---- finite differences -------------------------------------------------------

inline std::vector<double> central_difference(const std::function<double(const std::vector<double>&)>& f,
                                              std::vector<double> theta, double h = 1e-5) {
  std::vector<double> g(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    const double keep = theta[k];
    theta[k] = keep + h;
    const double up = f(theta);
    theta[k] = keep - h;
    const double down = f(theta);
    theta[k] = keep;
    g[k] = (up - down) / (2.0 * h);
  }
  return g;
}

// ||a - b|| / max(||a||, ||b||), or the absolute difference when both are tiny.
inline double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double scale = std::max(std::sqrt(na), std::sqrt(nb));
  return scale < 1e-12 ? std::sqrt(diff) : std::sqrt(diff) / scale;
}

// ---- metric tally -----------------------------------------------------------

struct Tally {
  double precision, recall, f1;
};

inline Tally tally(const std::vector<std::pair<Label, Label>>& pairs, Label label) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const auto& [t, p] : pairs) {
    if (t == label && p == label) ++tp;
    else if (p == label) ++fp;
    else if (t == label) ++fn;
  }
  const double P = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  const double R = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  const double F = P + R == 0.0 ? 0.0 : 2.0 * P * R / (P + R);
  return {P, R, F};
}

inline std::vector<std::pair<Label, Label>> random_pairs(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> lab(0, 3);
  std::vector<std::pair<Label, Label>> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(kAllLabels[lab(rng)], kAllLabels[lab(rng)]);
  return out;
}

// ---- separable toy set ------------------------------------------------------

// 40 points in two positive clusters split by the line x1 = x2.
inline std::vector<Example> separable_toy(std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> hi(2.0, 3.0), lo(0.1, 1.0);
  std::vector<Example> out;
  for (int i = 0; i < 40; ++i) {
    const bool a = i % 2 == 0;
    const double x1 = a ? hi(rng) : lo(rng), x2 = a ? lo(rng) : hi(rng);
    out.push_back({SparseVector(2, {{0, x1}, {1, x2}}), a ? Label::Efficient : Label::NotEfficient});
  }
  return out;
}

}  // namespace revlens::testing
