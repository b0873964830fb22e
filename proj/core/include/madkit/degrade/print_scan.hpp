#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "madkit/image.hpp"
#include "madkit/manifest.hpp"
#include "madkit/degrade/codec.hpp"

namespace madkit::degrade {

inline constexpr std::size_t kDefaultTargetBytes = 15360;

/// Parameters of the post-processing chains. The print/scan stage is a
/// parametric stand-in for printing and scanning, not a device model.
struct DegradeConfig {
  PostProcessing mode = PostProcessing::NPP;
  std::size_t target_bytes = kDefaultTargetBytes;
  /// Amplitude (intensity levels) of the seeded paper-surface pattern.
  double texture_amplitude = 6.0;
  /// Correlation length of the paper pattern in pixels.
  int texture_cell = 3;
  /// Standard deviation of additive Gaussian scanner noise.
  double noise_sigma = 3.0;
  /// Median filter radius of the dust-and-scratch stage (0 disables it).
  int median_radius = 1;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Paper-pattern -> Gaussian noise -> median filter, each stage skipped when
/// its parameter is zero.
RasterImage print_scan_stage(const RasterImage& image, const DegradeConfig& config);

RasterImage median_filter(const RasterImage& image, int radius);

struct DegradeResult {
  RasterImage image;                 ///< decoded output
  std::vector<std::uint8_t> encoded;  ///< compressed stream (JP2 and PS-JP2 only)
  std::optional<int> quality;
  std::string codec;
  std::string suffix;                ///< _npp, _rs, _jp2, _psjp2
};

/// Print/scan stage, resize_half, then compress_to_size.
DegradeResult simulate_print_scan(const RasterImage& image, const DegradeConfig& config,
                                  const LossyCodec& codec);

/// Applies the chain selected by config.mode.
DegradeResult apply_post_processing(const RasterImage& image, const DegradeConfig& config,
                                    const LossyCodec& codec);

std::string suffix_for(PostProcessing mode);

}  // namespace madkit::degrade
