#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "madkit/classify/calibration.hpp"
#include "madkit/classify/svm.hpp"
#include "madkit/features/difference.hpp"

namespace madkit::classify {

inline constexpr int kModelFormatVersion = 1;

struct ModelMetadata {
  std::size_t feature_dim = 0;
  std::string extractor;
  std::uint64_t seed = 0;
  std::string gamma_rule;  ///< "auto" or "fixed"
  double C = 0.0;
  std::size_t iterations = 0;
  std::string train_manifest_id;
  std::vector<std::string> train_subjects;  ///< sorted
  std::map<std::string, std::string> extra;
};

/// Trained MAD classifier. Immutable once built; scoring is thread-safe.
struct MadModel {
  std::vector<std::vector<double>> support_vectors;
  std::vector<double> coefficients;  ///< alpha_i * y_i
  double bias = 0.0;
  double gamma = 0.0;
  Sigmoid sigmoid;
  features::Standardizer standardizer;
  ModelMetadata metadata;

  std::size_t dim() const noexcept { return metadata.feature_dim; }

  /// Raw SVM decision value; throws ErrorCode::DimensionMismatch.
  double decision(std::span<const double> x) const;
  /// Calibrated MAD score in [0, 1]; higher means attack.
  double score(std::span<const double> x) const;
  std::vector<double> score_batch(const std::vector<std::vector<double>>& rows,
                                  unsigned jobs = 1) const;
};

struct TrainOptions {
  SvmParams svm;
  bool standardize = false;
  /// Optional held-out rows used for calibration instead of the training set.
  std::optional<std::vector<std::vector<double>>> calibration_rows;
  std::optional<std::vector<int>> calibration_labels;
};

struct TrainResult {
  MadModel model;
  SvmSolution solution;
  /// Rows the solver saw (standardized if requested), for KKT checks.
  std::vector<std::vector<double>> solver_rows;
};

/// Labels: kBonaFide (-1) or kAttack (+1). Throws ErrorCode::EmptyClass
/// for single-class input and ErrorCode::Numeric for non-finite features.
TrainResult train(const std::vector<std::vector<double>>& rows, std::span<const int> labels,
                  const TrainOptions& options, ModelMetadata metadata = {});

double score(const MadModel& model, std::span<const double> x);

/// Versioned JSON container; doubles are written in shortest round-trip
/// form, so load(save(m)) reproduces every score bit for bit.
std::string format_model(const MadModel& model);
MadModel parse_model(const std::string& text);
void save_model(const MadModel& model, const std::filesystem::path& path);
MadModel load_model(const std::filesystem::path& path);

}  // namespace madkit::classify
