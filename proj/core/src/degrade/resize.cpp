#include "madkit/degrade/resize.hpp"

#include "madkit/error.hpp"

namespace madkit::degrade {

RasterImage resize_half(const RasterImage& image) {
  if (image.empty()) throw Error(ErrorCode::InvalidArgument, "resize_half: empty image");
  if (image.width() % 2 != 0 || image.height() % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "resize_half: dimensions must be even, got " +
                                                std::to_string(image.width()) + "x" +
                                                std::to_string(image.height()));
  }
  RasterImage out(image.width() / 2, image.height() / 2, image.channels());
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      for (int c = 0; c < image.channels(); ++c) {
        const int sum = image.at(2 * x, 2 * y, c) + image.at(2 * x + 1, 2 * y, c) +
                        image.at(2 * x, 2 * y + 1, c) + image.at(2 * x + 1, 2 * y + 1, c);
        out.at(x, y, c) = quantize(sum / 4.0);
      }
    }
  }
  return out;
}

}  // namespace madkit::degrade
