#pragma once

#include <cstddef>
#include <vector>

namespace madkit::metrics {

struct MdsResult {
  std::vector<std::vector<double>> coordinates;  ///< one row of `dims` values per input
  std::vector<double> eigenvalues;               ///< leading eigenvalues, descending
  bool rank_deficient = false;                   ///< some axes padded with zeros
};

/// Classical (Torgerson) MDS: squared distances, double centering, leading
/// eigenpairs. Each axis is flipped so its first non-negligible coordinate
/// is positive. Requires at least dims + 1 rows of equal length.
MdsResult classical_mds(const std::vector<std::vector<double>>& rows, std::size_t dims = 2);

}  // namespace madkit::metrics
