#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "revlens/io.hpp"
#include "revlens/models/model.hpp"

namespace revlens {

// ---- multinomial logistic regression -------------------------------------
//
// Parameters are packed as theta = [W (L x d, row-major), b (L)]. The
// objective is the mean negative log-likelihood plus (l2/2)||W||^2; the bias
// is not regularized.

namespace detail {

inline double softmax_objective(const std::vector<double>& theta, const std::vector<Example>& data,
                                const std::vector<std::size_t>& y, std::size_t L, std::size_t d, double l2,
                                std::vector<double>* grad) {
  if (theta.size() != L * d + L) throw std::invalid_argument("softmax objective: parameter size mismatch");
  if (grad) grad->assign(theta.size(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(data.size());
  double loss = 0.0;
  std::vector<double> z(L);
  for (std::size_t n = 0; n < data.size(); ++n) {
    for (std::size_t l = 0; l < L; ++l) z[l] = data[n].x.dot(theta.data() + l * d) + theta[L * d + l];
    const double m = *std::max_element(z.begin(), z.end());
    double s = 0.0;
    for (double v : z) s += std::exp(v - m);
    const double lse = m + std::log(s);
    loss += lse - z[y[n]];
    if (grad) {
      for (std::size_t l = 0; l < L; ++l) {
        const double r = (std::exp(z[l] - lse) - (l == y[n] ? 1.0 : 0.0)) * inv_n;
        for (const auto& [i, x] : data[n].x.entries()) (*grad)[l * d + i] += r * x;
        (*grad)[L * d + l] += r;
      }
    }
  }
  loss *= inv_n;
  double sq = 0.0;
  for (std::size_t k = 0; k < L * d; ++k) {
    sq += theta[k] * theta[k];
    if (grad) (*grad)[k] += l2 * theta[k];
  }
  return loss + 0.5 * l2 * sq;
}

}  // namespace detail

inline double logistic_loss(const std::vector<double>& theta, const std::vector<Example>& data,
                            const std::vector<std::size_t>& y, std::size_t n_labels, std::size_t dim, double l2) {
  return detail::softmax_objective(theta, data, y, n_labels, dim, l2, nullptr);
}

inline std::vector<double> logistic_gradient(const std::vector<double>& theta, const std::vector<Example>& data,
                                             const std::vector<std::size_t>& y, std::size_t n_labels,
                                             std::size_t dim, double l2) {
  std::vector<double> g;
  detail::softmax_objective(theta, data, y, n_labels, dim, l2, &g);
  return g;
}

namespace detail {

// Full-batch gradient descent from zero; converged when the objective's
// relative change drops below the tolerance.
inline void fit_logistic(TrainedModel& m, const std::vector<Example>& data, const std::vector<std::size_t>& y,
                         const Hyperparams& hp) {
  const std::size_t L = m.labels.size(), d = m.dimension();
  std::vector<double> theta(L * d + L, 0.0), g;
  double prev = softmax_objective(theta, data, y, L, d, hp.l2, &g);
  bool converged = false;
  for (std::size_t e = 0; e < hp.epochs; ++e) {
    for (std::size_t k = 0; k < theta.size(); ++k) theta[k] -= hp.learning_rate * g[k];
    const double cur = softmax_objective(theta, data, y, L, d, hp.l2, &g);
    converged = std::abs(prev - cur) <= hp.tolerance * std::max(1.0, std::abs(cur));
    prev = cur;
  }
  m.weights.assign(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(L * d));
  m.bias.assign(theta.begin() + static_cast<std::ptrdiff_t>(L * d), theta.end());
  m.converged = converged;
}

}  // namespace detail

// ---- binary linear objectives for one-vs-rest ----------------------------
//
// theta = [w (d), b]; targets are +1/-1. Objective:
//   F = mean_n loss(t_n (w.x_n + b)) + (l2/2)||w||^2

inline double margin_loss(SgdLoss loss, double m) {
  if (loss == SgdLoss::Hinge) return std::max(0.0, 1.0 - m);
  return m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
}

// d loss / d margin; the hinge subgradient at the kink is taken as 0.
inline double margin_loss_derivative(SgdLoss loss, double m) {
  if (loss == SgdLoss::Hinge) return m < 1.0 ? -1.0 : 0.0;
  return m > 0 ? -std::exp(-m) / (1.0 + std::exp(-m)) : -1.0 / (1.0 + std::exp(m));
}

inline double binary_objective(const std::vector<double>& theta, const std::vector<Example>& data,
                               const std::vector<double>& targets, double l2, SgdLoss loss) {
  const std::size_t d = theta.size() - 1;
  double f = 0.0;
  for (std::size_t n = 0; n < data.size(); ++n)
    f += margin_loss(loss, targets[n] * (data[n].x.dot(theta.data()) + theta[d]));
  f /= static_cast<double>(data.size());
  double sq = 0.0;
  for (std::size_t i = 0; i < d; ++i) sq += theta[i] * theta[i];
  return f + 0.5 * l2 * sq;
}

inline std::vector<double> binary_gradient(const std::vector<double>& theta, const std::vector<Example>& data,
                                           const std::vector<double>& targets, double l2, SgdLoss loss) {
  const std::size_t d = theta.size() - 1;
  std::vector<double> g(theta.size(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (std::size_t n = 0; n < data.size(); ++n) {
    const double r = margin_loss_derivative(loss, targets[n] * (data[n].x.dot(theta.data()) + theta[d])) *
                     targets[n] * inv_n;
    for (const auto& [i, x] : data[n].x.entries()) g[i] += r * x;
    g[d] += r;
  }
  for (std::size_t i = 0; i < d; ++i) g[i] += l2 * theta[i];
  return g;
}

namespace detail {

// w = scale * v, so multiplicative shrinkage is O(1).
struct ScaledVector {
  std::vector<double> v;
  double scale = 1.0;
  double sq_norm = 0.0;  // of v

  explicit ScaledVector(std::size_t d) : v(d, 0.0) {}

  double dot(const SparseVector& x) const { return scale * x.dot(v.data()); }

  void shrink(double factor) {
    if (factor <= 0.0) {
      std::fill(v.begin(), v.end(), 0.0);
      scale = 1.0;
      sq_norm = 0.0;
      return;
    }
    scale *= factor;
    if (scale < 1e-9) normalize();
  }

  // w += c * x
  void add(const SparseVector& x, double c) {
    const double k = c / scale;
    for (const auto& [i, xi] : x.entries()) {
      const double old = v[i];
      v[i] += k * xi;
      sq_norm += v[i] * v[i] - old * old;
    }
  }

  double norm2() const { return scale * scale * std::max(0.0, sq_norm); }

  void normalize() {
    for (auto& e : v) e *= scale;
    scale = 1.0;
    sq_norm = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
  }

  std::vector<double> materialize() const {
    std::vector<double> w(v);
    for (auto& e : w) e *= scale;
    return w;
  }
};

inline std::vector<std::vector<std::size_t>> epoch_orders(std::size_t n, std::size_t epochs, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> out(epochs);
  for (auto& o : out) {
    o.resize(n);
    std::iota(o.begin(), o.end(), std::size_t{0});
    rng.shuffle(o);
  }
  return out;
}

inline std::vector<double> ovr_targets(const std::vector<std::size_t>& y, std::size_t label) {
  std::vector<double> t(y.size());
  for (std::size_t n = 0; n < y.size(); ++n) t[n] = y[n] == label ? 1.0 : -1.0;
  return t;
}

// Per-example SGD on the binary objective with step lr / (1 + lr * l2 * t).
inline void fit_sgd(TrainedModel& m, const std::vector<Example>& data, const std::vector<std::size_t>& y,
                    const Hyperparams& hp) {
  const std::size_t L = m.labels.size(), d = m.dimension();
  const auto orders = epoch_orders(data.size(), hp.epochs, hp.seed);
  m.weights.assign(L * d, 0.0);
  m.bias.assign(L, 0.0);
  bool all_converged = true;
  for (std::size_t l = 0; l < L; ++l) {
    const auto t = ovr_targets(y, l);
    ScaledVector w(d);
    double b = 0.0, prev = 0.0;
    bool converged = false;
    std::size_t step = 0;
    for (std::size_t e = 0; e < hp.epochs; ++e) {
      for (auto n : orders[e]) {
        const double eta = hp.learning_rate / (1.0 + hp.learning_rate * hp.l2 * static_cast<double>(step++));
        const double r = margin_loss_derivative(hp.sgd_loss, t[n] * (w.dot(data[n].x) + b)) * t[n];
        w.shrink(1.0 - eta * hp.l2);
        if (r != 0.0) {
          w.add(data[n].x, -eta * r);
          b -= eta * r;
        }
      }
      std::vector<double> theta = w.materialize();
      theta.push_back(b);
      const double cur = binary_objective(theta, data, t, hp.l2, hp.sgd_loss);
      converged = e > 0 && std::abs(prev - cur) <= hp.tolerance * std::max(1.0, cur);
      prev = cur;
    }
    const auto wl = w.materialize();
    std::copy(wl.begin(), wl.end(), m.weights.begin() + static_cast<std::ptrdiff_t>(l * d));
    m.bias[l] = b;
    all_converged = all_converged && converged;
  }
  m.converged = all_converged;
}

// Pegasos on the hinge objective with lambda = 1 / (C N). The bias is an
// extra constant feature (coordinate d) and is regularized with the
// weights. Each iteration is one pass in a seeded order; stops early once
// the primal objective changes by less than the tolerance.
inline void fit_linear_svc(TrainedModel& m, const std::vector<Example>& data, const std::vector<std::size_t>& y,
                           const Hyperparams& hp) {
  const std::size_t L = m.labels.size(), d = m.dimension(), N = data.size();
  const double lambda = 1.0 / (hp.C * static_cast<double>(N));
  const double radius2 = 1.0 / lambda;
  m.weights.assign(L * d, 0.0);
  m.bias.assign(L, 0.0);
  bool all_converged = true;
  Rng rng(hp.seed);
  std::vector<std::size_t> order(N);
  for (std::size_t l = 0; l < L; ++l) {
    const auto t = ovr_targets(y, l);
    ScaledVector w(d + 1);
    auto score = [&](const SparseVector& x) { return w.dot(x) + w.scale * w.v[d]; };
    double prev = 0.0;
    bool converged = false;
    std::size_t step = 0;
    for (std::size_t it = 0; it < hp.max_iter && !converged; ++it) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      rng.shuffle(order);
      for (auto n : order) {
        ++step;
        const double eta = 1.0 / (lambda * static_cast<double>(step));
        const double margin = t[n] * score(data[n].x);
        w.shrink(1.0 - 1.0 / static_cast<double>(step));
        if (margin < 1.0) {
          w.add(data[n].x, eta * t[n]);
          const double old = w.v[d];
          w.v[d] += eta * t[n] / w.scale;
          w.sq_norm += w.v[d] * w.v[d] - old * old;
        }
        if (const double n2 = w.norm2(); n2 > radius2) w.shrink(std::sqrt(radius2 / n2));
      }
      double hinge = 0.0;
      for (std::size_t n = 0; n < N; ++n) hinge += std::max(0.0, 1.0 - t[n] * score(data[n].x));
      const double cur = 0.5 * lambda * w.norm2() + hinge / static_cast<double>(N);
      converged = it > 0 && std::abs(prev - cur) <= hp.tolerance * std::max(1.0, cur);
      prev = cur;
    }
    const auto wl = w.materialize();
    std::copy(wl.begin(), wl.begin() + static_cast<std::ptrdiff_t>(d),
              m.weights.begin() + static_cast<std::ptrdiff_t>(l * d));
    m.bias[l] = wl[d];
    all_converged = all_converged && converged;
  }
  m.converged = all_converged;
}

}  // namespace detail

}  // namespace revlens
