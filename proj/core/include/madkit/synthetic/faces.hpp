#pragma once

#include <cstdint>

#include "madkit/image.hpp"
#include "madkit/landmarks.hpp"

namespace madkit::synthetic {

/// Procedural stand-in for aligned passport-style face images.
struct FaceConfig {
  int width = 720;
  int height = 960;
  /// Eye-centre distance of the canonical template in pixels.
  double inter_eye = 180.0;
  /// Per-identity landmark displacement (pixels, standard deviation).
  double shape_sigma = 6.0;
  /// Amplitude of the fine skin/background texture (intensity levels).
  double texture_amplitude = 10.0;
  /// Texture correlation length in pixels; larger is smoother.
  double texture_scale = 2.0;
  bool color = true;
};

/// 68-point template with eye centres on a horizontal line, inter_eye apart.
LandmarkSet template_landmarks(const FaceConfig& config);

struct FaceIdentity {
  std::uint64_t seed = 0;
  LandmarkSet landmarks;
  RasterImage appearance;  ///< rendered at `landmarks`
};

FaceIdentity make_identity(std::uint64_t seed, const FaceConfig& config);

struct SampleVariation {
  double pose_sigma = 2.0;        ///< landmark jitter (pixels)
  double gain_sigma = 0.06;       ///< illumination gain variation
  double bias_sigma = 6.0;        ///< illumination offset variation
  double noise_sigma = 2.0;       ///< sensor noise
  bool grayscale = false;
};

struct FaceSample {
  RasterImage image;
  LandmarkSet landmarks;
};

/// Identity appearance warped to jittered landmarks with photometric change.
FaceSample render_sample(const FaceIdentity& identity, std::uint64_t seed,
                         const SampleVariation& variation, const FaceConfig& config);

}  // namespace madkit::synthetic
