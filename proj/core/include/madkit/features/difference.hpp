#pragma once

#include <span>
#include <vector>

namespace madkit::features {

/// Elementwise ref - probe. Throws ErrorCode::DimensionMismatch.
std::vector<double> combine_difference(std::span<const double> ref, std::span<const double> probe);

/// Per-feature standardization fitted on training rows.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const std::vector<std::vector<double>>& rows);
  bool empty() const noexcept { return mean.empty(); }
  std::vector<double> apply(std::span<const double> row) const;
};

}  // namespace madkit::features
