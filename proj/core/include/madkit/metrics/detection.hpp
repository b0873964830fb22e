#pragma once

#include <vector>

#include "madkit/scores.hpp"

namespace madkit::metrics {

// Tie rule used by every metric: a score equal to the threshold is
// classified as attack (detection) or as match (recognition).

struct ErrorRates {
  double apcer = 0.0;  ///< attacks scored < threshold
  double bpcer = 0.0;  ///< bona fide scored >= threshold
};

ErrorRates error_rates(const ScoreSet& scores, double threshold);

struct OperatingPoint {
  double rate = 0.0;
  double threshold = 0.0;
};

/// Sorted candidate thresholds: every distinct score and every midpoint
/// between consecutive distinct scores.
std::vector<double> candidate_thresholds(const ScoreSet& scores);

/// Detection equal error rate. Sweeps candidate thresholds; at the first
/// candidate where APCER - BPCER >= 0 either the rates are equal (returned
/// as is) or both are linearly interpolated against the previous candidate.
OperatingPoint deer(const ScoreSet& scores);

/// BPCER at the largest candidate threshold with APCER <= target (the
/// lowest BPCER admissible under that APCER bound).
OperatingPoint bpcer_at_apcer(const ScoreSet& scores, double target = 0.10);

}  // namespace madkit::metrics
