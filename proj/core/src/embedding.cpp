#include "madkit/embedding.hpp"

#include <cmath>

#include "madkit/error.hpp"

namespace madkit {

EmbeddingVector::EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::InvalidArgument, "embedding must be non-empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::Numeric, "embedding value " + std::to_string(i) + " is not finite");
    }
  }
}

double EmbeddingVector::norm() const noexcept { return std::sqrt(dot(values_, values_)); }

EmbeddingVector EmbeddingVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error(ErrorCode::Numeric, "cannot normalize a zero vector");
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] / n;
  return EmbeddingVector(std::move(out));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "embedding dimensions differ");
  const double denom = a.norm() * b.norm();
  if (denom == 0.0) return 0.0;
  return dot(a.values(), b.values()) / denom;
}

}  // namespace madkit
