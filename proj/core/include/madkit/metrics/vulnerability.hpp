#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace madkit::metrics {

/// Smallest threshold with #(impostor >= t) / n <= target, i.e. just above
/// the (k+1)-th largest impostor score with k = floor(target * n). Returns
/// -infinity when every impostor may match (target >= 1).
double threshold_at_fmr(std::span<const double> impostor, double target = 0.001);

struct RecognitionRates {
  double fmr = 0.0;   ///< impostor >= threshold
  double fnmr = 0.0;  ///< genuine < threshold
};

RecognitionRates recognition_rates(std::span<const double> genuine,
                                   std::span<const double> impostor, double threshold);

/// Similarity scores of one morph against the probes of each contributor.
struct MorphScores {
  std::string morph_id;
  std::vector<std::vector<double>> contributors;
};

struct MmpmrResult {
  double mmpmr = 0.0;            ///< min over contributors of max over probes >= t
  double comparison_rate = 0.0;  ///< share of individual comparisons >= t
  std::size_t morphs_accepted = 0;
  std::size_t morphs_total = 0;
  std::size_t comparisons_accepted = 0;
  std::size_t comparisons_total = 0;
};

MmpmrResult mmpmr(const std::vector<MorphScores>& morphs, double threshold);

/// MMPMR + FNMR. Both inputs must lie in [0, 1].
double rmmr(double mmpmr_value, double fnmr);

struct VulnerabilityReport {
  double threshold = 0.0;
  double fmr = 0.0;
  double fnmr = 0.0;
  MmpmrResult morphs;
  double rmmr = 0.0;
};

VulnerabilityReport vulnerability_report(std::span<const double> genuine,
                                         std::span<const double> impostor,
                                         const std::vector<MorphScores>& morphs,
                                         double target_fmr = 0.001);

}  // namespace madkit::metrics
