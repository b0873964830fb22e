#include "madkit/morph/warp.hpp"

#include <algorithm>
#include <cmath>

#include "madkit/error.hpp"
#include "madkit/morph/delaunay.hpp"

namespace madkit::morph {

double triangle_area(const Triangle& t) noexcept {
  return 0.5 * std::abs(orient2d(t[0], t[1], t[2]));
}

double sample_bilinear(const RasterImage& image, double x, double y, int channel) noexcept {
  const double max_x = image.width() - 1;
  const double max_y = image.height() - 1;
  x = std::clamp(x, 0.0, max_x);
  y = std::clamp(y, 0.0, max_y);
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, image.width() - 1);
  const int y1 = std::min(y0 + 1, image.height() - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  const double top = (1.0 - fx) * image.at(x0, y0, channel) + fx * image.at(x1, y0, channel);
  const double bottom = (1.0 - fx) * image.at(x0, y1, channel) + fx * image.at(x1, y1, channel);
  return (1.0 - fy) * top + fy * bottom;
}

AffineMap::AffineMap(const Triangle& from, const Triangle& to) {
  const double m00 = from[1].x - from[0].x, m01 = from[2].x - from[0].x;
  const double m10 = from[1].y - from[0].y, m11 = from[2].y - from[0].y;
  const double det = m00 * m11 - m01 * m10;
  if (det == 0.0) throw Error(ErrorCode::InvalidArgument, "affine map from a degenerate triangle");
  const double i00 = m11 / det, i01 = -m01 / det;
  const double i10 = -m10 / det, i11 = m00 / det;
  const double t00 = to[1].x - to[0].x, t01 = to[2].x - to[0].x;
  const double t10 = to[1].y - to[0].y, t11 = to[2].y - to[0].y;
  a_ = t00 * i00 + t01 * i10;
  b_ = t00 * i01 + t01 * i11;
  d_ = t10 * i00 + t11 * i10;
  e_ = t10 * i01 + t11 * i11;
  c_ = to[0].x - (a_ * from[0].x + b_ * from[0].y);
  f_ = to[0].y - (d_ * from[0].x + e_ * from[0].y);
}

Point2 AffineMap::operator()(Point2 p) const noexcept {
  return {a_ * p.x + b_ * p.y + c_, d_ * p.x + e_ * p.y + f_};
}

void for_each_pixel_in(const Triangle& tri, int width, int height,
                       const std::function<void(int, int)>& visit) {
  const double area2 = orient2d(tri[0], tri[1], tri[2]);
  if (area2 == 0.0) return;
  const double min_x = std::min({tri[0].x, tri[1].x, tri[2].x});
  const double max_x = std::max({tri[0].x, tri[1].x, tri[2].x});
  const double min_y = std::min({tri[0].y, tri[1].y, tri[2].y});
  const double max_y = std::max({tri[0].y, tri[1].y, tri[2].y});
  const int x0 = std::max(0, static_cast<int>(std::ceil(min_x - 1e-9)));
  const int x1 = std::min(width - 1, static_cast<int>(std::floor(max_x + 1e-9)));
  const int y0 = std::max(0, static_cast<int>(std::ceil(min_y - 1e-9)));
  const int y1 = std::min(height - 1, static_cast<int>(std::floor(max_y + 1e-9)));
  constexpr double kEdgeSlack = -1e-9;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const Point2 p{static_cast<double>(x), static_cast<double>(y)};
      const double l0 = orient2d(tri[1], tri[2], p) / area2;
      const double l1 = orient2d(tri[2], tri[0], p) / area2;
      const double l2 = orient2d(tri[0], tri[1], p) / area2;
      if (l0 >= kEdgeSlack && l1 >= kEdgeSlack && l2 >= kEdgeSlack) visit(x, y);
    }
  }
}

namespace {
template <typename Store>
bool warp_into(const RasterImage& src, const Triangle& src_tri, const Triangle& dst_tri,
               int width, int height, int channels, Store&& store) {
  if (triangle_area(src_tri) < kDegenerateArea || triangle_area(dst_tri) < kDegenerateArea) {
    return false;
  }
  if (channels != src.channels()) {
    throw Error(ErrorCode::DimensionMismatch, "warp_triangle: channel count differs");
  }
  const AffineMap to_source(dst_tri, src_tri);
  for_each_pixel_in(dst_tri, width, height, [&](int x, int y) {
    const Point2 s = to_source({static_cast<double>(x), static_cast<double>(y)});
    for (int c = 0; c < channels; ++c) store(x, y, c, sample_bilinear(src, s.x, s.y, c));
  });
  return true;
}
}  // namespace

bool warp_triangle(const RasterImage& src, const Triangle& src_tri, const Triangle& dst_tri,
                   RasterImage& accumulator) {
  return warp_into(src, src_tri, dst_tri, accumulator.width(), accumulator.height(),
                   accumulator.channels(), [&](int x, int y, int c, double v) {
                     accumulator.at(x, y, c) = quantize(v);
                   });
}

bool warp_triangle(const RasterImage& src, const Triangle& src_tri, const Triangle& dst_tri,
                   FloatImage& accumulator) {
  return warp_into(src, src_tri, dst_tri, accumulator.width, accumulator.height,
                   accumulator.channels, [&](int x, int y, int c, double v) {
                     accumulator.at(x, y, c) = v;
                   });
}

}  // namespace madkit::morph
