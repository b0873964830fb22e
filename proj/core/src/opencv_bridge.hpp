#pragma once

#include <opencv2/core.hpp>

#include "madkit/image.hpp"

namespace madkit::detail {

cv::Mat raster_to_mat(const RasterImage& image);

}  // namespace madkit::detail
