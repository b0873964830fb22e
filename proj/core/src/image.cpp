#include "madkit/image.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "madkit/error.hpp"
#include "opencv_bridge.hpp"

namespace madkit {

namespace {
void check_shape(int width, int height, int channels) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
  }
  if (channels != 1 && channels != 3) {
    throw Error(ErrorCode::InvalidArgument, "image must have 1 or 3 channels");
  }
}

std::size_t expected_size(int width, int height, int channels) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
         static_cast<std::size_t>(channels);
}

RasterImage from_mat(const cv::Mat& decoded, const std::string& what) {
  if (decoded.empty()) throw Error(ErrorCode::Io, "cannot decode image " + what);
  if (decoded.depth() != CV_8U) {
    throw Error(ErrorCode::InvalidArgument, "only 8-bit images are supported: " + what);
  }
  const int w = decoded.cols;
  const int h = decoded.rows;
  const int src_channels = decoded.channels();
  const int channels = src_channels == 1 ? 1 : 3;
  RasterImage out(w, h, channels);
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = decoded.ptr<std::uint8_t>(y);
    for (int x = 0; x < w; ++x) {
      const std::uint8_t* px = row + static_cast<std::ptrdiff_t>(x) * src_channels;
      if (channels == 1) {
        out.at(x, y) = px[0];
      } else {
        // OpenCV stores BGR(A)
        out.at(x, y, 0) = px[2];
        out.at(x, y, 1) = px[1];
        out.at(x, y, 2) = px[0];
      }
    }
  }
  return out;
}

cv::Mat to_mat(const RasterImage& image) {
  const int type = image.channels() == 1 ? CV_8UC1 : CV_8UC3;
  cv::Mat mat(image.height(), image.width(), type);
  for (int y = 0; y < image.height(); ++y) {
    std::uint8_t* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < image.width(); ++x) {
      if (image.channels() == 1) {
        row[x] = image.at(x, y);
      } else {
        row[3 * x + 0] = image.at(x, y, 2);
        row[3 * x + 1] = image.at(x, y, 1);
        row[3 * x + 2] = image.at(x, y, 0);
      }
    }
  }
  return mat;
}
}  // namespace

RasterImage::RasterImage(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
  check_shape(width, height, channels);
  data_.assign(expected_size(width, height, channels), fill);
}

RasterImage::RasterImage(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_shape(width, height, channels);
  if (data_.size() != expected_size(width, height, channels)) {
    throw Error(ErrorCode::InvalidArgument, "pixel buffer size does not match dimensions");
  }
}

std::uint8_t quantize(double value) noexcept {
  if (!(value > 0.0)) return 0;  // also maps NaN to 0
  if (value >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::nearbyint(value));
}

RasterImage quantize(const FloatImage& image) {
  RasterImage out(image.width, image.height, image.channels);
  auto dst = out.data();
  for (std::size_t i = 0; i < image.data.size(); ++i) dst[i] = quantize(image.data[i]);
  return out;
}

FloatImage to_float(const RasterImage& image) {
  FloatImage out(image.width(), image.height(), image.channels());
  auto src = image.data();
  for (std::size_t i = 0; i < src.size(); ++i) out.data[i] = src[i];
  return out;
}

RasterImage to_grayscale(const RasterImage& image) {
  if (image.channels() == 1) return image;
  RasterImage out(image.width(), image.height(), 1);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const double luma = 0.299 * image.at(x, y, 0) + 0.587 * image.at(x, y, 1) +
                          0.114 * image.at(x, y, 2);
      out.at(x, y) = quantize(luma);
    }
  }
  return out;
}

double psnr(const RasterImage& a, const RasterImage& b) {
  if (!a.same_shape(b)) throw Error(ErrorCode::DimensionMismatch, "psnr: image shapes differ");
  double sse = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = static_cast<double>(da[i]) - static_cast<double>(db[i]);
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / static_cast<double>(da.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double mean_absolute_error(const RasterImage& a, const RasterImage& b) {
  if (!a.same_shape(b)) {
    throw Error(ErrorCode::DimensionMismatch, "mean_absolute_error: image shapes differ");
  }
  double total = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    total += std::abs(static_cast<double>(da[i]) - static_cast<double>(db[i]));
  }
  return total / static_cast<double>(da.size());
}

RasterImage read_png(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::Io, "image not found: " + path.string());
  }
  const cv::Mat decoded = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  return from_mat(decoded, path.string());
}

void write_png(const RasterImage& image, const std::filesystem::path& path) {
  if (image.empty()) throw Error(ErrorCode::InvalidArgument, "cannot write empty image");
  std::vector<std::uint8_t> bytes;
  if (!cv::imencode(".png", to_mat(image), bytes, {cv::IMWRITE_PNG_COMPRESSION, 6})) {
    throw Error(ErrorCode::Io, "PNG encoding failed for " + path.string());
  }
  std::FILE* f = std::fopen(path.string().c_str(), "wb");
  if (!f) throw Error(ErrorCode::Io, "cannot open for writing: " + path.string());
  const std::size_t written = std::fwrite(bytes.data(), 1, bytes.size(), f);
  std::fclose(f);
  if (written != bytes.size()) throw Error(ErrorCode::Io, "short write: " + path.string());
}

RasterImage decode_image(std::span<const std::uint8_t> bytes) {
  const cv::Mat buffer(1, static_cast<int>(bytes.size()), CV_8UC1,
                       const_cast<std::uint8_t*>(bytes.data()));
  return from_mat(cv::imdecode(buffer, cv::IMREAD_UNCHANGED), "from memory");
}

namespace detail {
// Shared with the codec implementation.
cv::Mat raster_to_mat(const RasterImage& image) { return to_mat(image); }
}  // namespace detail

}  // namespace madkit
