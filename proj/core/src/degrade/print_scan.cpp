#include "madkit/degrade/print_scan.hpp"

#include <algorithm>
#include <cmath>

#include "madkit/degrade/resize.hpp"
#include "madkit/error.hpp"
#include "madkit/rng.hpp"

namespace madkit::degrade {

void DegradeConfig::validate() const {
  if (target_bytes == 0) throw Error(ErrorCode::InvalidArgument, "target bytes must be positive");
  if (!(texture_amplitude >= 0.0) || !std::isfinite(texture_amplitude)) {
    throw Error(ErrorCode::InvalidArgument, "texture amplitude must be non-negative");
  }
  if (texture_cell < 1) throw Error(ErrorCode::InvalidArgument, "texture cell must be >= 1");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw Error(ErrorCode::InvalidArgument, "noise sigma must be non-negative");
  }
  if (median_radius < 0) throw Error(ErrorCode::InvalidArgument, "median radius must be >= 0");
}

std::string suffix_for(PostProcessing mode) {
  switch (mode) {
    case PostProcessing::NPP: return "_npp";
    case PostProcessing::Resized: return "_rs";
    case PostProcessing::JP2: return "_jp2";
    case PostProcessing::PSJP2: return "_psjp2";
  }
  return "";
}

namespace {

// Smooth random field: Gaussian values on a lattice of `cell` pixels,
// bilinearly interpolated, scaled to unit standard deviation at the nodes.
std::vector<double> paper_pattern(int width, int height, int cell, Rng& rng) {
  const int gw = width / cell + 2;
  const int gh = height / cell + 2;
  std::vector<double> grid(static_cast<std::size_t>(gw) * static_cast<std::size_t>(gh));
  for (double& g : grid) g = rng.normal();
  std::vector<double> field(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    const double gy = static_cast<double>(y) / cell;
    const int y0 = static_cast<int>(gy);
    const double fy = gy - y0;
    for (int x = 0; x < width; ++x) {
      const double gx = static_cast<double>(x) / cell;
      const int x0 = static_cast<int>(gx);
      const double fx = gx - x0;
      auto g = [&](int i, int j) { return grid[static_cast<std::size_t>(j) * gw + i]; };
      const double top = (1 - fx) * g(x0, y0) + fx * g(x0 + 1, y0);
      const double bottom = (1 - fx) * g(x0, y0 + 1) + fx * g(x0 + 1, y0 + 1);
      field[static_cast<std::size_t>(y) * width + x] = (1 - fy) * top + fy * bottom;
    }
  }
  return field;
}

}  // namespace

RasterImage median_filter(const RasterImage& image, int radius) {
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "median radius must be >= 0");
  if (radius == 0) return image;
  RasterImage out(image.width(), image.height(), image.channels());
  std::vector<std::uint8_t> window;
  window.reserve(static_cast<std::size_t>((2 * radius + 1) * (2 * radius + 1)));
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < image.channels(); ++c) {
        window.clear();
        for (int dy = -radius; dy <= radius; ++dy) {
          const int yy = std::clamp(y + dy, 0, image.height() - 1);
          for (int dx = -radius; dx <= radius; ++dx) {
            window.push_back(image.at(std::clamp(x + dx, 0, image.width() - 1), yy, c));
          }
        }
        auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
        std::nth_element(window.begin(), mid, window.end());
        out.at(x, y, c) = *mid;
      }
    }
  }
  return out;
}

RasterImage print_scan_stage(const RasterImage& image, const DegradeConfig& config) {
  config.validate();
  RasterImage out = image;
  if (config.texture_amplitude > 0.0) {
    Rng rng(derive_seed(config.seed, "paper-texture"));
    const auto field = paper_pattern(image.width(), image.height(), config.texture_cell, rng);
    for (int y = 0; y < out.height(); ++y) {
      for (int x = 0; x < out.width(); ++x) {
        const double d = config.texture_amplitude * field[static_cast<std::size_t>(y) * out.width() + x];
        for (int c = 0; c < out.channels(); ++c) out.at(x, y, c) = quantize(out.at(x, y, c) + d);
      }
    }
  }
  if (config.noise_sigma > 0.0) {
    Rng rng(derive_seed(config.seed, "scanner-noise"));
    for (std::uint8_t& v : out.data()) v = quantize(v + config.noise_sigma * rng.normal());
  }
  return median_filter(out, config.median_radius);
}

namespace {
DegradeResult compressed(const RasterImage& image, const DegradeConfig& config,
                         const LossyCodec& codec, PostProcessing mode) {
  CompressionResult c = compress_to_size(image, config.target_bytes, codec);
  DegradeResult result;
  result.image = codec.decode(c.bytes);
  result.encoded = std::move(c.bytes);
  result.quality = c.quality;
  result.codec = c.codec;
  result.suffix = suffix_for(mode);
  return result;
}
}  // namespace

DegradeResult simulate_print_scan(const RasterImage& image, const DegradeConfig& config,
                                  const LossyCodec& codec) {
  return compressed(resize_half(print_scan_stage(image, config)), config, codec,
                    PostProcessing::PSJP2);
}

DegradeResult apply_post_processing(const RasterImage& image, const DegradeConfig& config,
                                    const LossyCodec& codec) {
  config.validate();
  switch (config.mode) {
    case PostProcessing::NPP: return {image, {}, std::nullopt, "", suffix_for(config.mode)};
    case PostProcessing::Resized:
      return {resize_half(image), {}, std::nullopt, "", suffix_for(config.mode)};
    case PostProcessing::JP2:
      return compressed(resize_half(image), config, codec, PostProcessing::JP2);
    case PostProcessing::PSJP2: return simulate_print_scan(image, config, codec);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown post-processing mode");
}

}  // namespace madkit::degrade
