#pragma once

#include <string>
#include <vector>

#include "madkit/scores.hpp"

namespace madkit::metrics {

struct CurvePoint {
  double threshold = 0.0;
  double apcer = 0.0;
  double bpcer = 0.0;
};

/// One point per threshold in {-inf, distinct scores..., +inf}, ordered by
/// increasing threshold, from (0, 1) to (1, 0).
std::vector<CurvePoint> det_curve(const ScoreSet& scores);

/// Trapezoid area under BPCER as a function of APCER.
double det_area(const std::vector<CurvePoint>& curve);

struct ClassDensity {
  std::vector<double> bin_mass;  ///< sums to 1
  double bandwidth = 0.0;        ///< Silverman's rule of thumb
  std::vector<double> kde;       ///< density on ScoreDensities::grid
};

struct ScoreDensities {
  std::vector<double> bin_edges;  ///< bins + 1 edges shared by both classes
  std::vector<double> grid;
  ClassDensity negative;
  ClassDensity positive;
};

/// Normalized histograms plus Gaussian KDE series. Bandwidth
/// h = 0.9 * min(sd, IQR / 1.34) * n^(-1/5), falling back to the sd and
/// then to 1e-3 of the score range when the spread is zero.
ScoreDensities score_histograms(const ScoreSet& scores, int bins = 50, int grid_points = 2048);

/// Plot-ready CSV: `series,class,x,value`.
std::string format_densities_csv(const ScoreDensities& densities, const std::string& negative_name,
                                  const std::string& positive_name);
std::string format_det_csv(const std::vector<CurvePoint>& curve);

}  // namespace madkit::metrics
