#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace madkit::classify {

inline constexpr int kBonaFide = -1;
inline constexpr int kAttack = +1;

struct SvmParams {
  double C = 1.0;
  /// nullopt selects 1 / (dim * variance of all training feature values).
  std::optional<double> gamma;
  /// Stop once the maximal KKT violation drops below this.
  double tolerance = 1e-3;
  std::size_t max_iterations = 10'000'000;
  /// Kernel row cache budget (LRU over rows).
  std::size_t cache_megabytes = 256;
  std::uint64_t seed = 1;

  void validate() const;
};

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) noexcept;

/// 1 / (dim * variance); 1 / dim when the variance is zero.
double auto_gamma(const std::vector<std::vector<double>>& rows);

/// Full solution of the soft-margin dual, one alpha per training row.
/// Decision function: f(x) = sum_i alpha_i y_i K(x_i, x) + bias.
struct SvmSolution {
  std::vector<double> alpha;
  double bias = 0.0;
  double gamma = 0.0;
  double C = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> decision_values;  ///< f(x_i) on the training rows
};

/// Sequential minimal optimization with maximal-violating-pair selection
/// for the first index and the second-order gain rule for the second.
/// Candidates are scanned in a seeded permutation, so ties break
/// reproducibly. Labels must be +1/-1 with both classes present.
SvmSolution solve_svm(const std::vector<std::vector<double>>& rows, std::span<const int> labels,
                      const SvmParams& params);

/// sum(alpha) - 0.5 * sum_ij alpha_i alpha_j y_i y_j K_ij
double dual_objective(const std::vector<std::vector<double>>& rows, std::span<const int> labels,
                      std::span<const double> alpha, double gamma);

struct KktReport {
  double max_violation = 0.0;      ///< worst margin violation over all rows
  double equality_residual = 0.0;  ///< |sum alpha_i y_i|
  double max_bound_excess = 0.0;   ///< how far any alpha leaves [0, C]
  std::size_t worst_index = 0;

  bool holds(double tolerance, double equality_tolerance = 1e-9) const noexcept {
    return max_violation <= tolerance && equality_residual <= equality_tolerance &&
           max_bound_excess <= equality_tolerance;
  }
};

/// alpha=0 => y f >= 1 - tol; 0<alpha<C => |y f - 1| <= tol; alpha=C => y f <= 1 + tol.
KktReport check_kkt(const std::vector<std::vector<double>>& rows, std::span<const int> labels,
                    const SvmSolution& solution);

}  // namespace madkit::classify
