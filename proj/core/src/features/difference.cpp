#include "madkit/features/difference.hpp"

#include <cmath>

#include "madkit/error.hpp"

namespace madkit::features {

std::vector<double> combine_difference(std::span<const double> ref, std::span<const double> probe) {
  if (ref.size() != probe.size()) {
    throw Error(ErrorCode::DimensionMismatch, "feature dimensions differ: " + std::to_string(ref.size()) +
                                                  " vs " + std::to_string(probe.size()));
  }
  std::vector<double> out(ref.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ref[i] - probe[i];
  return out;
}

Standardizer Standardizer::fit(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "standardizer needs at least one row");
  const std::size_t d = rows.front().size();
  Standardizer s;
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 0.0);
  for (const auto& r : rows) {
    if (r.size() != d) throw Error(ErrorCode::DimensionMismatch, "standardizer rows differ in size");
    for (std::size_t i = 0; i < d; ++i) s.mean[i] += r[i];
  }
  const double n = static_cast<double>(rows.size());
  for (double& m : s.mean) m /= n;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < d; ++i) s.scale[i] += (r[i] - s.mean[i]) * (r[i] - s.mean[i]);
  }
  for (double& v : s.scale) {
    v = std::sqrt(v / n);
    if (!(v > 1e-12)) v = 1.0;
  }
  return s;
}

std::vector<double> Standardizer::apply(std::span<const double> row) const {
  if (row.size() != mean.size()) throw Error(ErrorCode::DimensionMismatch, "standardizer dimension mismatch");
  std::vector<double> out(row.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (row[i] - mean[i]) / scale[i];
  return out;
}

}  // namespace madkit::features
