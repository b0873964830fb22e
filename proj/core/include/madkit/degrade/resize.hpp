#pragma once

#include "madkit/image.hpp"

namespace madkit::degrade {

/// Halves both dimensions with a 2x2 box filter (rounded half-to-even).
/// Throws ErrorCode::InvalidArgument for odd dimensions.
RasterImage resize_half(const RasterImage& image);

}  // namespace madkit::degrade
