#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <list>
#include <string>
#include <unordered_map>
#include <vector>

#include "revlens/models/model.hpp"

namespace revlens {

// Dual of the binary nu-SVM with a linear kernel, in the scaled form
//   min 1/2 a'Qa  s.t.  0 <= a_i <= 1,  y'a = 0,  e'a = nu n
// with Q_ij = y_i y_j <x_i, x_j>. After solving, the decision function is
// f(x) = (sum_i a_i y_i <x_i, x> - rho) / r.
struct NuSvmSolution {
  std::vector<double> alpha;
  double rho = 0.0;
  double r = 1.0;
  std::vector<double> w;  // sum_i a_i y_i x_i / r
  double b = 0.0;         // -rho / r
  std::size_t iterations = 0;
  bool converged = false;
  double nu = 0.0;

  double decision(const SparseVector& x) const { return x.dot(w) + b; }
};

inline double max_feasible_nu(const std::vector<double>& y) {
  std::size_t pos = 0;
  for (double t : y) pos += t > 0 ? 1 : 0;
  const std::size_t neg = y.size() - pos;
  return 2.0 * static_cast<double>(std::min(pos, neg)) / static_cast<double>(y.size());
}

namespace detail {

class LinearKernelColumns {
public:
  LinearKernelColumns(const std::vector<const SparseVector*>& x, const std::vector<double>& y, std::size_t dim,
                      std::size_t cache_bytes)
      : x_(x), y_(y), dense_(dim, 0.0) {
    const std::size_t per_col = std::max<std::size_t>(1, x.size() * sizeof(double));
    capacity_ = std::max<std::size_t>(2, cache_bytes / per_col);
  }

  // Column i of Q. The two most recent columns are never evicted by the
  // next fetch, so callers may hold a pair of references.
  const std::vector<double>& column(std::size_t i) {
    if (auto it = index_.find(i); it != index_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->second;
    }
    if (lru_.size() >= capacity_) {
      index_.erase(lru_.back().first);
      lru_.pop_back();
    }
    std::vector<double> col(x_.size());
    for (const auto& [k, v] : x_[i]->entries()) dense_[k] = v;
    for (std::size_t j = 0; j < x_.size(); ++j) col[j] = y_[i] * y_[j] * x_[j]->dot(dense_.data());
    for (const auto& e : x_[i]->entries()) dense_[e.first] = 0.0;
    lru_.emplace_front(i, std::move(col));
    index_[i] = lru_.begin();
    return lru_.front().second;
  }

private:
  const std::vector<const SparseVector*>& x_;
  const std::vector<double>& y_;
  std::vector<double> dense_;
  std::size_t capacity_;
  std::list<std::pair<std::size_t, std::vector<double>>> lru_;
  std::unordered_map<std::size_t, std::list<std::pair<std::size_t, std::vector<double>>>::iterator> index_;
};

}  // namespace detail

// SMO with second-order working-set selection restricted to pairs of the
// same class, which keeps both equality constraints satisfied. Stops when
// the maximal violation is below tol or after max_iterations updates.
inline NuSvmSolution solve_nu_svm(const std::vector<const SparseVector*>& x, const std::vector<double>& y,
                                  std::size_t dim, double nu, double tol, std::size_t max_iterations,
                                  std::size_t cache_bytes = std::size_t{256} << 20) {
  const std::size_t n = x.size();
  if (n == 0 || y.size() != n) throw std::invalid_argument("solve_nu_svm: bad problem size");
  if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("solve_nu_svm: nu must be in (0, 1]");
  if (nu > max_feasible_nu(y) + 1e-12)
    throw ModelError("nu = " + std::to_string(nu) + " is infeasible; at most " + std::to_string(max_feasible_nu(y)) +
                     " for this class balance");
  constexpr double kTau = 1e-12;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  NuSvmSolution sol;
  sol.nu = nu;
  auto& a = sol.alpha;
  a.assign(n, 0.0);
  double sum_pos = nu * static_cast<double>(n) / 2.0, sum_neg = sum_pos;
  for (std::size_t i = 0; i < n; ++i) {
    double& s = y[i] > 0 ? sum_pos : sum_neg;
    a[i] = std::min(1.0, s);
    s -= a[i];
  }

  std::vector<double> qd(n);
  for (std::size_t i = 0; i < n; ++i) qd[i] = x[i]->squared_norm();
  std::vector<double> g(n, 0.0);
  {
    std::vector<double> w0(dim, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != 0.0)
        for (const auto& [k, v] : x[i]->entries()) w0[k] += a[i] * y[i] * v;
    for (std::size_t i = 0; i < n; ++i) g[i] = y[i] * x[i]->dot(w0);
  }

  auto upper = [&](std::size_t i) { return a[i] >= 1.0; };
  auto lower = [&](std::size_t i) { return a[i] <= 0.0; };
  detail::LinearKernelColumns Q(x, y, dim, cache_bytes);

  while (sol.iterations < max_iterations) {
    double gmaxp = -kInf, gmaxn = -kInf;
    std::ptrdiff_t ip = -1, in = -1;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] > 0) {
        if (!upper(t) && -g[t] >= gmaxp) {
          gmaxp = -g[t];
          ip = static_cast<std::ptrdiff_t>(t);
        }
      } else if (!lower(t) && g[t] >= gmaxn) {
        gmaxn = g[t];
        in = static_cast<std::ptrdiff_t>(t);
      }
    }
    const std::vector<double>* qp = ip >= 0 ? &Q.column(static_cast<std::size_t>(ip)) : nullptr;
    const std::vector<double>* qn = in >= 0 ? &Q.column(static_cast<std::size_t>(in)) : nullptr;

    double gmaxp2 = -kInf, gmaxn2 = -kInf, best = kInf;
    std::ptrdiff_t jmin = -1;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] > 0) {
        if (lower(j)) continue;
        gmaxp2 = std::max(gmaxp2, g[j]);
        const double diff = gmaxp + g[j];
        if (ip >= 0 && diff > 0) {
          const double quad = qd[static_cast<std::size_t>(ip)] + qd[j] - 2.0 * (*qp)[j];
          const double obj = -(diff * diff) / (quad > 0 ? quad : kTau);
          if (obj <= best) {
            best = obj;
            jmin = static_cast<std::ptrdiff_t>(j);
          }
        }
      } else {
        if (upper(j)) continue;
        gmaxn2 = std::max(gmaxn2, -g[j]);
        const double diff = gmaxn - g[j];
        if (in >= 0 && diff > 0) {
          const double quad = qd[static_cast<std::size_t>(in)] + qd[j] - 2.0 * (*qn)[j];
          const double obj = -(diff * diff) / (quad > 0 ? quad : kTau);
          if (obj <= best) {
            best = obj;
            jmin = static_cast<std::ptrdiff_t>(j);
          }
        }
      }
    }
    if (std::max(gmaxp + gmaxp2, gmaxn + gmaxn2) < tol || jmin < 0) {
      sol.converged = true;
      break;
    }
    const auto j = static_cast<std::size_t>(jmin);
    const auto i = static_cast<std::size_t>(y[j] > 0 ? ip : in);

    const auto& qi = Q.column(i);
    const auto& qj = Q.column(j);

    const double old_i = a[i], old_j = a[j];
    double quad = qd[i] + qd[j] - 2.0 * qi[j];
    if (quad <= 0) quad = kTau;
    const double delta = (g[i] - g[j]) / quad;
    const double sum = a[i] + a[j];
    a[i] -= delta;
    a[j] += delta;
    if (sum > 1.0) {
      if (a[i] > 1.0) {
        a[i] = 1.0;
        a[j] = sum - 1.0;
      }
    } else if (a[j] < 0.0) {
      a[j] = 0.0;
      a[i] = sum;
    }
    if (sum > 1.0) {
      if (a[j] > 1.0) {
        a[j] = 1.0;
        a[i] = sum - 1.0;
      }
    } else if (a[i] < 0.0) {
      a[i] = 0.0;
      a[j] = sum;
    }
    const double di = a[i] - old_i, dj = a[j] - old_j;
    for (std::size_t k = 0; k < n; ++k) g[k] += qi[k] * di + qj[k] * dj;
    ++sol.iterations;
  }

  // rho and r from free variables of each class, else the bound midpoint
  double ub1 = kInf, lb1 = -kInf, ub2 = kInf, lb2 = -kInf, s1 = 0.0, s2 = 0.0;
  std::size_t f1 = 0, f2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool pos = y[i] > 0;
    double& ub = pos ? ub1 : ub2;
    double& lb = pos ? lb1 : lb2;
    if (upper(i)) lb = std::max(lb, g[i]);
    else if (lower(i)) ub = std::min(ub, g[i]);
    else {
      (pos ? s1 : s2) += g[i];
      ++(pos ? f1 : f2);
    }
  }
  auto level = [](double sum, std::size_t free, double ub, double lb) {
    if (free > 0) return sum / static_cast<double>(free);
    if (!std::isfinite(ub)) return lb;  // whole class at the upper bound
    if (!std::isfinite(lb)) return ub;
    return (ub + lb) / 2.0;
  };
  const double r1 = level(s1, f1, ub1, lb1);
  const double r2 = level(s2, f2, ub2, lb2);
  sol.r = (r1 + r2) / 2.0;
  sol.rho = (r1 - r2) / 2.0;
  if (!(sol.r > 1e-12) || !std::isfinite(sol.r)) {
    sol.r = 1.0;
    sol.converged = false;
  }

  sol.w.assign(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != 0.0)
      for (const auto& [k, v] : x[i]->entries()) sol.w[k] += a[i] * y[i] * v / sol.r;
  sol.b = -sol.rho / sol.r;
  return sol;
}

namespace detail {

// One binary nu-SVM per label. The iteration budget is max_iter times the
// number of training examples.
inline void fit_nu_svc(TrainedModel& m, const std::vector<Example>& data, const std::vector<std::size_t>& y,
                       const Hyperparams& hp) {
  const std::size_t L = m.labels.size(), d = m.dimension();
  std::vector<const SparseVector*> xs;
  xs.reserve(data.size());
  for (const auto& e : data) xs.push_back(&e.x);
  m.weights.assign(L * d, 0.0);
  m.bias.assign(L, 0.0);
  bool all_converged = true;
  nlohmann::ordered_json used = nlohmann::ordered_json::object();
  for (std::size_t l = 0; l < L; ++l) {
    std::vector<double> t(y.size());
    for (std::size_t n = 0; n < y.size(); ++n) t[n] = y[n] == l ? 1.0 : -1.0;
    double nu = hp.nu;
    const double cap = max_feasible_nu(t);
    if (nu > cap) {
      if (!hp.nu_clamp)
        throw ModelError("nu = " + std::to_string(hp.nu) + " is infeasible for label " +
                         std::string(to_string(m.labels[l])) + " (at most " + std::to_string(cap) + ")");
      nu = cap;
    }
    const auto sol = solve_nu_svm(xs, t, d, nu, hp.tolerance, hp.max_iter * std::max<std::size_t>(1, data.size()));
    std::copy(sol.w.begin(), sol.w.end(), m.weights.begin() + static_cast<std::ptrdiff_t>(l * d));
    m.bias[l] = sol.b;
    all_converged = all_converged && sol.converged;
    used[std::string(to_string(m.labels[l]))] = nu;
  }
  m.converged = all_converged;
  m.metadata["nu_effective"] = used;
}

}  // namespace detail

}  // namespace revlens
