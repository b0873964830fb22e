#include "madkit/metrics/mds.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "madkit/error.hpp"

namespace madkit::metrics {

MdsResult classical_mds(const std::vector<std::vector<double>>& rows, std::size_t dims) {
  if (dims == 0) throw Error(ErrorCode::InvalidArgument, "MDS needs at least one output dimension");
  if (rows.size() < dims + 1) {
    throw Error(ErrorCode::InvalidArgument, "MDS needs at least " + std::to_string(dims + 1) + " rows");
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  const std::size_t d = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != d) throw Error(ErrorCode::DimensionMismatch, "MDS rows differ in length");
    for (double v : r) {
      if (!std::isfinite(v)) throw Error(ErrorCode::Numeric, "MDS input is not finite");
    }
  }
  Eigen::MatrixXd sq(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sq(i, i) = 0.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = rows[static_cast<std::size_t>(i)][k] - rows[static_cast<std::size_t>(j)][k];
        s += diff * diff;
      }
      sq(i, j) = sq(j, i) = s;
    }
  }
  const Eigen::VectorXd row_mean = sq.rowwise().mean();
  const double total_mean = row_mean.mean();
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      b(i, j) = -0.5 * (sq(i, j) - row_mean(i) - row_mean(j) + total_mean);
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
  if (eig.info() != Eigen::Success) throw Error(ErrorCode::Numeric, "MDS eigen-decomposition failed");
  const Eigen::VectorXd& values = eig.eigenvalues();
  const double scale = std::max(1.0, std::abs(values(n - 1)));
  const double cutoff = 1e-10 * scale;

  MdsResult result;
  result.coordinates.assign(rows.size(), std::vector<double>(dims, 0.0));
  for (std::size_t a = 0; a < dims; ++a) {
    const Eigen::Index col = n - 1 - static_cast<Eigen::Index>(a);
    const double lambda = values(col);
    result.eigenvalues.push_back(lambda);
    if (!(lambda > cutoff)) {
      result.rank_deficient = true;
      continue;
    }
    Eigen::VectorXd v = eig.eigenvectors().col(col) * std::sqrt(lambda);
    const double tiny = 1e-9 * v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(v(i)) > tiny) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
    const double mean = v.mean();
    for (Eigen::Index i = 0; i < n; ++i) result.coordinates[static_cast<std::size_t>(i)][a] = v(i) - mean;
  }
  return result;
}

}  // namespace madkit::metrics
