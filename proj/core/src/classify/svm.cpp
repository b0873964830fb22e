#include "madkit/classify/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <numeric>

#include "madkit/error.hpp"
#include "madkit/rng.hpp"

namespace madkit::classify {

void SvmParams::validate() const {
  if (!(C > 0.0) || !std::isfinite(C)) throw Error(ErrorCode::InvalidArgument, "C must be positive");
  if (gamma && (!(*gamma > 0.0) || !std::isfinite(*gamma))) {
    throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  }
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (max_iterations == 0) throw Error(ErrorCode::InvalidArgument, "max_iterations must be positive");
}

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) noexcept {
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

double auto_gamma(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw Error(ErrorCode::InvalidArgument, "auto_gamma: no data");
  const std::size_t dim = rows.front().size();
  double sum = 0.0, count = 0.0;
  for (const auto& r : rows) {
    for (double v : r) sum += v;
    count += static_cast<double>(r.size());
  }
  const double mean = sum / count;
  double var = 0.0;
  for (const auto& r : rows) {
    for (double v : r) var += (v - mean) * (v - mean);
  }
  var /= count;
  return var > 0.0 ? 1.0 / (static_cast<double>(dim) * var) : 1.0 / static_cast<double>(dim);
}

namespace {

void check_problem(const std::vector<std::vector<double>>& rows, std::span<const int> labels) {
  if (rows.size() != labels.size()) {
    throw Error(ErrorCode::DimensionMismatch, "rows and labels differ in length");
  }
  if (rows.empty()) throw Error(ErrorCode::EmptyClass, "no training rows");
  const std::size_t dim = rows.front().size();
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "feature vectors are empty");
  bool pos = false, neg = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(i) + " has dimension " +
                                                    std::to_string(rows[i].size()));
    }
    for (double v : rows[i]) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::Numeric, "row " + std::to_string(i) + " has a non-finite feature");
      }
    }
    if (labels[i] == kAttack) {
      pos = true;
    } else if (labels[i] == kBonaFide) {
      neg = true;
    } else {
      throw Error(ErrorCode::InvalidArgument, "labels must be +1 or -1");
    }
  }
  if (!pos || !neg) throw Error(ErrorCode::EmptyClass, "training data must contain both classes");
}

// Kernel rows computed on demand and kept in a least-recently-used cache.
class KernelCache {
 public:
  KernelCache(const std::vector<std::vector<double>>& rows, double gamma, std::size_t megabytes)
      : rows_(rows), gamma_(gamma), slots_(rows.size()) {
    const std::size_t row_bytes = std::max<std::size_t>(1, rows.size() * sizeof(double));
    capacity_ = std::max<std::size_t>(2, megabytes * 1024 * 1024 / row_bytes);
  }

  const std::vector<double>& row(std::size_t i) {
    if (slots_[i].has_value()) {
      lru_.splice(lru_.begin(), lru_, *slots_[i]);
      return lru_.front().values;
    }
    if (lru_.size() >= capacity_) {
      slots_[lru_.back().index].reset();
      lru_.pop_back();
    }
    Entry e{i, std::vector<double>(rows_.size())};
    for (std::size_t j = 0; j < rows_.size(); ++j) e.values[j] = rbf_kernel(rows_[i], rows_[j], gamma_);
    lru_.push_front(std::move(e));
    slots_[i] = lru_.begin();
    return lru_.front().values;
  }

 private:
  struct Entry {
    std::size_t index;
    std::vector<double> values;
  };
  const std::vector<std::vector<double>>& rows_;
  double gamma_;
  std::size_t capacity_ = 2;
  std::list<Entry> lru_;
  std::vector<std::optional<std::list<Entry>::iterator>> slots_;
};

constexpr double kTau = 1e-12;

}  // namespace

SvmSolution solve_svm(const std::vector<std::vector<double>>& rows, std::span<const int> labels,
                      const SvmParams& params) {
  params.validate();
  check_problem(rows, labels);
  const std::size_t n = rows.size();
  const double C = params.C;
  const double gamma = params.gamma ? *params.gamma : auto_gamma(rows);

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = labels[i];
  std::vector<double> alpha(n, 0.0);
  // Gradient of 0.5 a'Qa - e'a with Q_ij = y_i y_j K_ij.
  std::vector<double> grad(n, -1.0);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(params.seed, "smo-order"));
  for (std::size_t k = n; k > 1; --k) std::swap(order[k - 1], order[rng.below(k)]);

  KernelCache cache(rows, gamma, params.cache_megabytes);
  auto in_up = [&](std::size_t t) { return y[t] > 0 ? alpha[t] < C : alpha[t] > 0; };
  auto in_low = [&](std::size_t t) { return y[t] > 0 ? alpha[t] > 0 : alpha[t] < C; };

  SvmSolution sol;
  sol.gamma = gamma;
  sol.C = C;
  std::size_t iter = 0;
  for (; iter < params.max_iterations; ++iter) {
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t : order) {
      if (in_up(t) && -y[t] * grad[t] > gmax) {
        gmax = -y[t] * grad[t];
        i = t;
      }
    }
    if (i == n) {
      sol.converged = true;
      break;
    }
    const std::vector<double>& ki = cache.row(i);
    double gmin = std::numeric_limits<double>::infinity();
    double best_gain = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    for (std::size_t t : order) {
      if (!in_low(t)) continue;
      const double v = -y[t] * grad[t];
      gmin = std::min(gmin, v);
      const double b = gmax - v;
      if (b > 0) {
        double a = 2.0 - 2.0 * ki[t];  // K_ii = K_tt = 1 for the RBF kernel
        if (a <= 0) a = kTau;
        const double gain = -(b * b) / a;
        if (gain < best_gain) {
          best_gain = gain;
          j = t;
        }
      }
    }
    if (gmax - gmin < params.tolerance || j == n) {
      sol.converged = true;
      break;
    }
    const std::vector<double>& kj = cache.row(j);
    const std::vector<double>& kin = cache.row(i);

    const double old_ai = alpha[i], old_aj = alpha[j];
    double quad = 2.0 - 2.0 * kin[j];
    if (quad <= 0) quad = kTau;
    if (y[i] != y[j]) {
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = -diff;
      }
      if (diff > 0) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = C - diff;
        }
      } else if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = C + diff;
      }
    } else {
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = sum - C;
        }
      } else if (alpha[j] < 0) {
        alpha[j] = 0;
        alpha[i] = sum;
      }
      if (sum > C) {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = sum - C;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = sum;
      }
    }
    const double dai = alpha[i] - old_ai, daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += y[t] * (y[i] * kin[t] * dai + y[j] * kj[t] * daj);
    }
  }
  sol.iterations = iter;

  // Bias: mean over free vectors, else the midpoint of the feasible interval.
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0 && alpha[t] < C) {
      free_sum += -y[t] * grad[t];
      ++free_count;
    }
  }
  if (free_count > 0) {
    sol.bias = free_sum / static_cast<double>(free_count);
  } else {
    double up_max = -std::numeric_limits<double>::infinity();
    double low_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      if (in_up(t)) up_max = std::max(up_max, v);
      if (in_low(t)) low_min = std::min(low_min, v);
    }
    if (std::isfinite(up_max) && std::isfinite(low_min)) {
      sol.bias = 0.5 * (up_max + low_min);
    } else {
      sol.bias = std::isfinite(up_max) ? up_max : low_min;
    }
  }

  sol.alpha = std::move(alpha);
  sol.decision_values.assign(n, sol.bias);
  for (std::size_t j = 0; j < n; ++j) {
    if (sol.alpha[j] == 0.0) continue;
    const double c = sol.alpha[j] * y[j];
    for (std::size_t t = 0; t < n; ++t) {
      sol.decision_values[t] += c * rbf_kernel(rows[j], rows[t], gamma);
    }
  }
  return sol;
}

double dual_objective(const std::vector<std::vector<double>>& rows, std::span<const int> labels,
                      std::span<const double> alpha, double gamma) {
  double linear = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    linear += alpha[i];
    if (alpha[i] == 0.0) continue;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (alpha[j] == 0.0) continue;
      quad += alpha[i] * alpha[j] * labels[i] * labels[j] * rbf_kernel(rows[i], rows[j], gamma);
    }
  }
  return linear - 0.5 * quad;
}

KktReport check_kkt(const std::vector<std::vector<double>>& rows, std::span<const int> labels,
                    const SvmSolution& solution) {
  KktReport report;
  const double C = solution.C;
  const double bound_eps = 1e-12 * C;
  double eq = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double a = solution.alpha[i];
    eq += a * labels[i];
    report.max_bound_excess = std::max({report.max_bound_excess, -a, a - C});
    double f = solution.bias;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (solution.alpha[j] != 0.0) f += solution.alpha[j] * labels[j] * rbf_kernel(rows[j], rows[i], solution.gamma);
    }
    const double m = labels[i] * f - 1.0;
    double v;
    if (a <= bound_eps) {
      v = std::max(0.0, -m);
    } else if (a >= C - bound_eps) {
      v = std::max(0.0, m);
    } else {
      v = std::abs(m);
    }
    if (v > report.max_violation) {
      report.max_violation = v;
      report.worst_index = i;
    }
  }
  report.equality_residual = std::abs(eq);
  return report;
}

}  // namespace madkit::classify
