#pragma once

#include <cstddef>
#include <vector>

#include "madkit/image.hpp"
#include "madkit/landmarks.hpp"

namespace madkit::morph {

/// Per-pixel blend weight in [0, 1].
struct RegionMask {
  int width = 0;
  int height = 0;
  std::vector<double> weight;

  double at(int x, int y) const noexcept {
    return weight[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
};

struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

RegionMask rectangle_mask(int width, int height, const Rect& rect, double feather = 0.0);

/// Mask of the convex hull of the selected landmarks, grown by `margin`
/// pixels and feathered linearly over `feather` pixels outside that.
RegionMask hull_mask(int width, int height, const LandmarkSet& landmarks,
                     const std::vector<std::size_t>& indices, double margin = 0.0,
                     double feather = 0.0);

/// Pixelwise union (max) of masks of equal size.
RegionMask combine(const std::vector<RegionMask>& masks);

/// out = (1 - opacity*w) * base + opacity*w * overlay per pixel.
RasterImage blend_masked(const RasterImage& base, const RasterImage& overlay,
                         const RegionMask& mask, double opacity = 1.0);

namespace groups {
// 68-point convention index ranges.
std::vector<std::size_t> jaw();
std::vector<std::size_t> eyes();
std::vector<std::size_t> nostrils();
std::vector<std::size_t> face_outline();  ///< jaw + brows
}  // namespace groups

/// Optional morph post-step: eye and nostril regions of image A (warped to
/// the morph geometry) are blended over the morph.
RasterImage reblend_regions(const RasterImage& morph_image, const LandmarkSet& morph_landmarks,
                            const RasterImage& img_a, const LandmarkSet& lm_a,
                            double opacity = 1.0, double feather = 6.0);

/// Optional morph post-step: the morphed face region is copied onto the
/// unwarped background image.
RasterImage replace_background(const RasterImage& morph_image,
                               const LandmarkSet& morph_landmarks,
                               const RasterImage& background, double feather = 8.0);

}  // namespace madkit::morph
