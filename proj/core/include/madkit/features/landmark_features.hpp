#pragma once

#include <array>
#include <utility>
#include <vector>

#include "madkit/landmarks.hpp"

namespace madkit::features {

enum class LandmarkFeatureMode { Distances, Angles };

/// Similarity transform taking the eye centres (means of points 36-41 and
/// 42-47) to (-0.5, 0) and (0.5, 0). Only the first 68 points are kept.
LandmarkSet normalize_to_eyes(const LandmarkSet& landmarks);

/// Segment pairs used by the angles mode: consecutive points within each
/// facial component (open chains for jaw, brows and nose; closed loops for
/// eyes and lips), 63 segments in total.
const std::vector<std::pair<int, int>>& angle_segments();

/// Distances mode: per-landmark displacement between the normalized sets
/// (68 values). Angles mode: per segment, angle(ref) - angle(probe) wrapped
/// into (-pi, pi] (63 values).
std::vector<double> landmark_features(const LandmarkSet& lm_ref, const LandmarkSet& lm_probe,
                                      LandmarkFeatureMode mode);

}  // namespace madkit::features
