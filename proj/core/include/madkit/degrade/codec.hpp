#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "madkit/image.hpp"

namespace madkit::degrade {

/// Lossy codec with an integer quality knob; larger quality means larger
/// (or equal) output.
class LossyCodec {
 public:
  virtual ~LossyCodec() = default;

  virtual std::string name() const = 0;
  virtual std::string extension() const = 0;
  virtual int min_quality() const = 0;
  virtual int max_quality() const = 0;
  virtual std::vector<std::uint8_t> encode(const RasterImage& image, int quality) const = 0;
  virtual RasterImage decode(std::span<const std::uint8_t> bytes) const = 0;
};

/// JPEG 2000 (quality = compression ratio parameter x1000, 1..1000). Images
/// must be at least 32 pixels per side.
std::unique_ptr<LossyCodec> make_jp2_codec();
/// Baseline JPEG fallback (quality 1..100).
std::unique_ptr<LossyCodec> make_jpeg_codec();
/// JPEG 2000 when the encoder works in this build, otherwise JPEG.
std::unique_ptr<LossyCodec> make_default_codec();
std::unique_ptr<LossyCodec> make_codec(const std::string& name);

struct CompressionResult {
  std::vector<std::uint8_t> bytes;
  int quality = 0;
  std::string codec;
};

/// Binary search for the highest quality whose encoding fits in
/// `target_bytes`. Throws ErrorCode::Unreachable (with the minimum
/// achievable size in the message) if even the lowest quality is too large.
CompressionResult compress_to_size(const RasterImage& image, std::size_t target_bytes,
                                   const LossyCodec& codec);

}  // namespace madkit::degrade
