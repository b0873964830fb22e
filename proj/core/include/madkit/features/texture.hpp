#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "madkit/image.hpp"

namespace madkit::features {

enum class HistogramNorm {
  Counts,       ///< raw pixel counts per bin
  Probability,  ///< each cell histogram sums to 1
};

/// Cell grid per axis: 1 (whole image) or 4 (4x4 cells).
struct TextureOptions {
  int cells = 1;
  HistogramNorm norm = HistogramNorm::Counts;
};

/// 8-neighbour LBP over 3x3 patches. Neighbours are visited clockwise from
/// the top-left; the first neighbour is the most significant bit and a
/// neighbour >= centre sets its bit. Border pixels are skipped, so the
/// histogram mass is (w-2)*(h-2). Output: 256 * cells^2 bins.
std::vector<double> lbp_histogram(const RasterImage& gray, TextureOptions options = {});

/// The LBP code at an interior pixel.
std::uint8_t lbp_code(const RasterImage& gray, int x, int y) noexcept;

/// k real-valued n x n filters (n odd, k <= 12), loaded from file.
class FilterBank {
 public:
  FilterBank() = default;
  FilterBank(int size, std::vector<std::vector<double>> filters);

  int size() const noexcept { return size_; }
  int count() const noexcept { return static_cast<int>(filters_.size()); }
  bool empty() const noexcept { return filters_.empty(); }
  const std::vector<double>& filter(int i) const { return filters_[static_cast<std::size_t>(i)]; }

  /// Text format: header "bsif k=<k> size=<n>", then k blocks of n rows with
  /// n values each.
  static FilterBank load(const std::filesystem::path& path);
  static FilterBank parse(const std::string& text);
  std::string format() const;

  /// Seeded zero-mean bank for experiments without learned filters.
  static FilterBank random_zero_mean(int count, int size, std::uint64_t seed);

 private:
  int size_ = 0;
  std::vector<std::vector<double>> filters_;
};

/// BSIF code: filter j's response (correlation, row-major filter taps) > 0
/// sets bit j. Border of width n/2 is skipped. Output: 2^k * cells^2 bins.
std::vector<double> bsif_histogram(const RasterImage& gray, const FilterBank& bank,
                                   TextureOptions options = {});

std::uint32_t bsif_code(const RasterImage& gray, const FilterBank& bank, int x, int y) noexcept;

}  // namespace madkit::features
