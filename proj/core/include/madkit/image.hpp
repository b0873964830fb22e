#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace madkit {

/// 8-bit raster, row-major, interleaved channels (1 = gray, 3 = RGB).
class RasterImage {
 public:
  RasterImage() = default;
  RasterImage(int width, int height, int channels, std::uint8_t fill = 0);
  RasterImage(int width, int height, int channels, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  std::uint8_t at(int x, int y, int c = 0) const noexcept {
    return data_[index(x, y, c)];
  }
  std::uint8_t& at(int x, int y, int c = 0) noexcept { return data_[index(x, y, c)]; }

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  bool same_shape(const RasterImage& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) *
               static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(c);
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Floating-point companion used for accumulation before quantization.
struct FloatImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<double> data;

  FloatImage() = default;
  FloatImage(int w, int h, int c, double fill = 0.0)
      : width(w), height(h), channels(c),
        data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) *
                 static_cast<std::size_t>(c),
             fill) {}

  double& at(int x, int y, int c = 0) noexcept {
    return data[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                 static_cast<std::size_t>(x)) *
                    static_cast<std::size_t>(channels) +
                static_cast<std::size_t>(c)];
  }
  double at(int x, int y, int c = 0) const noexcept {
    return const_cast<FloatImage*>(this)->at(x, y, c);
  }
};

/// Round half to even and clamp into [0, 255].
std::uint8_t quantize(double value) noexcept;

RasterImage quantize(const FloatImage& image);
FloatImage to_float(const RasterImage& image);

/// ITU-R BT.601 luma; grayscale input is returned unchanged.
RasterImage to_grayscale(const RasterImage& image);

double psnr(const RasterImage& a, const RasterImage& b);
double mean_absolute_error(const RasterImage& a, const RasterImage& b);

/// Lossless PNG I/O. Alpha channels are dropped on read; 16-bit input is rejected.
RasterImage read_png(const std::filesystem::path& path);
void write_png(const RasterImage& image, const std::filesystem::path& path);
RasterImage decode_image(std::span<const std::uint8_t> bytes);

}  // namespace madkit
