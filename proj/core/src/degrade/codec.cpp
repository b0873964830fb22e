#include "madkit/degrade/codec.hpp"

#include <opencv2/imgcodecs.hpp>

#include "madkit/error.hpp"
#include "opencv_bridge.hpp"

namespace madkit::degrade {

namespace {

class OpenCvCodec final : public LossyCodec {
 public:
  OpenCvCodec(std::string name, std::string ext, int flag, int lo, int hi, int min_side)
      : name_(std::move(name)), ext_(std::move(ext)), flag_(flag), lo_(lo), hi_(hi), min_side_(min_side) {}

  std::string name() const override { return name_; }
  std::string extension() const override { return ext_; }
  int min_quality() const override { return lo_; }
  int max_quality() const override { return hi_; }

  std::vector<std::uint8_t> encode(const RasterImage& image, int quality) const override {
    if (quality < lo_ || quality > hi_) {
      throw Error(ErrorCode::InvalidArgument, name_ + ": quality " + std::to_string(quality) +
                                                  " outside [" + std::to_string(lo_) + ", " +
                                                  std::to_string(hi_) + "]");
    }
    if (image.width() < min_side_ || image.height() < min_side_) {
      throw Error(ErrorCode::InvalidArgument, name_ + " needs images of at least " + std::to_string(min_side_) +
                                                  " pixels per side");
    }
    std::vector<std::uint8_t> bytes;
    bool ok = false;
    try {
      ok = cv::imencode(ext_, detail::raster_to_mat(image), bytes, {flag_, quality});
    } catch (const cv::Exception& e) {
      throw Error(ErrorCode::Io, name_ + " encoder failed: " + e.what());
    }
    if (!ok || bytes.empty()) throw Error(ErrorCode::Io, name_ + " encoder failed");
    return bytes;
  }

  RasterImage decode(std::span<const std::uint8_t> bytes) const override {
    RasterImage out = decode_image(bytes);
    return out;
  }

 private:
  std::string name_, ext_;
  int flag_, lo_, hi_, min_side_;
};

}  // namespace

std::unique_ptr<LossyCodec> make_jp2_codec() {
  return std::make_unique<OpenCvCodec>("jpeg2000", ".jp2", cv::IMWRITE_JPEG2000_COMPRESSION_X1000, 1,
                                       1000, 32);
}

std::unique_ptr<LossyCodec> make_jpeg_codec() {
  return std::make_unique<OpenCvCodec>("jpeg", ".jpg", cv::IMWRITE_JPEG_QUALITY, 1, 100, 1);
}

std::unique_ptr<LossyCodec> make_default_codec() {
  auto jp2 = make_jp2_codec();
  try {
    const RasterImage probe(64, 64, 1, 128);
    if (jp2->decode(jp2->encode(probe, 100)).same_shape(probe)) return jp2;
  } catch (const Error&) {
  }
  return make_jpeg_codec();
}

std::unique_ptr<LossyCodec> make_codec(const std::string& name) {
  if (name == "jpeg2000" || name == "jp2") return make_jp2_codec();
  if (name == "jpeg" || name == "jpg") return make_jpeg_codec();
  if (name == "auto" || name.empty()) return make_default_codec();
  throw Error(ErrorCode::InvalidArgument, "unknown codec '" + name + "'");
}

CompressionResult compress_to_size(const RasterImage& image, std::size_t target_bytes,
                                   const LossyCodec& codec) {
  if (target_bytes == 0) throw Error(ErrorCode::InvalidArgument, "target size must be positive");
  int lo = codec.min_quality();
  int hi = codec.max_quality();
  std::vector<std::uint8_t> best = codec.encode(image, lo);
  if (best.size() > target_bytes) {
    throw Error(ErrorCode::Unreachable, "unreachable target: " + std::to_string(target_bytes) +
                                            " bytes requested, minimum achievable size is " +
                                            std::to_string(best.size()) + " bytes");
  }
  int best_quality = lo;
  // Invariant: quality `lo` fits; search (lo, hi] for the highest that fits.
  while (lo < hi) {
    const int mid = lo + (hi - lo + 1) / 2;
    std::vector<std::uint8_t> bytes = codec.encode(image, mid);
    if (bytes.size() <= target_bytes) {
      lo = mid;
      best = std::move(bytes);
      best_quality = mid;
    } else {
      hi = mid - 1;
    }
  }
  return {std::move(best), best_quality, codec.name()};
}

}  // namespace madkit::degrade
