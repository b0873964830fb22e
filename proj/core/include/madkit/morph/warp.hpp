#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "madkit/image.hpp"
#include "madkit/landmarks.hpp"

namespace madkit::morph {

using Triangle = std::array<Point2, 3>;

inline constexpr double kDegenerateArea = 1e-9;

double triangle_area(const Triangle& t) noexcept;

/// Bilinear sample with edge clamping. Coordinates are pixel centers.
double sample_bilinear(const RasterImage& image, double x, double y, int channel) noexcept;

/// Affine map taking each vertex of `from` to the matching vertex of `to`.
class AffineMap {
 public:
  AffineMap(const Triangle& from, const Triangle& to);
  Point2 operator()(Point2 p) const noexcept;

 private:
  // x' = a*x + b*y + c, y' = d*x + e*y + f
  double a_, b_, c_, d_, e_, f_;
};

/// Calls visit(x, y) for every pixel center inside `tri` (edges inclusive),
/// clipped to [0, width) x [0, height).
void for_each_pixel_in(const Triangle& tri, int width, int height,
                       const std::function<void(int, int)>& visit);

/// Pixels inside dst_tri receive bilinear samples of `src` under the affine
/// map src_tri -> dst_tri; all other pixels are untouched. Returns false and
/// leaves `accumulator` unchanged when either triangle is degenerate.
bool warp_triangle(const RasterImage& src, const Triangle& src_tri, const Triangle& dst_tri,
                   RasterImage& accumulator);

/// Unquantized variant used when several warps are blended.
bool warp_triangle(const RasterImage& src, const Triangle& src_tri, const Triangle& dst_tri,
                   FloatImage& accumulator);

}  // namespace madkit::morph
