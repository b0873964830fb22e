#pragma once

#include <span>

namespace madkit::classify {

/// P(attack | f) = 1 / (1 + exp(A*f + B)).
struct Sigmoid {
  double A = -1.0;
  double B = 0.0;
  /// Set when the fit was degenerate and the fallback sigmoid is in use.
  bool fallback = false;

  double operator()(double decision_value) const noexcept;
};

/// Platt scaling with prior-count smoothed targets (N+ + 1)/(N+ + 2) and
/// 1/(N- + 2), fitted by Newton's method with backtracking. Labels are +1
/// (attack) / -1 (bona fide). Constant decision values, or a fit whose
/// slope comes out non-negative, yield the fallback A = -1, B = 0.
Sigmoid calibrate(std::span<const double> decision_values, std::span<const int> labels);

/// Negative log-likelihood minimized by calibrate().
double platt_objective(std::span<const double> decision_values, std::span<const int> labels,
                       double A, double B);

}  // namespace madkit::classify
