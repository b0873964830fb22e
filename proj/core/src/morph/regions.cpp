#include "madkit/morph/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "madkit/error.hpp"
#include "madkit/morph/delaunay.hpp"
#include "madkit/morph/morph.hpp"

namespace madkit::morph {

namespace {

std::vector<std::size_t> range(std::size_t first, std::size_t last) {
  std::vector<std::size_t> out(last - first + 1);
  std::iota(out.begin(), out.end(), first);
  return out;
}

double ramp(double distance, double margin, double feather) {
  if (distance <= margin) return 1.0;
  if (feather <= 0.0 || distance >= margin + feather) return 0.0;
  return 1.0 - (distance - margin) / feather;
}

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && orient2d(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient2d(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a, ap = p - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double t = len2 > 0.0 ? (ap.x * ab.x + ap.y * ab.y) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Point2 d = p - (a + t * ab);
  return std::hypot(d.x, d.y);
}

double hull_distance(Point2 p, const std::vector<Point2>& hull) {
  if (hull.size() == 1) return std::hypot(p.x - hull[0].x, p.y - hull[0].y);
  bool inside = hull.size() >= 3;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2 a = hull[i], b = hull[(i + 1) % hull.size()];
    if (orient2d(a, b, p) < 0) inside = false;
    best = std::min(best, segment_distance(p, a, b));
  }
  return inside ? 0.0 : best;
}

void check_dlib(const LandmarkSet& lm) {
  if (lm.base_scheme() != schemes::kDlib68) {
    throw Error(ErrorCode::InvalidArgument, "region masks need dlib68 landmarks");
  }
}

}  // namespace

RegionMask rectangle_mask(int width, int height, const Rect& rect, double feather) {
  RegionMask mask{width, height, std::vector<double>(static_cast<std::size_t>(width) *
                                                     static_cast<std::size_t>(height))};
  const double x0 = rect.x, y0 = rect.y;
  const double x1 = rect.x + rect.width - 1, y1 = rect.y + rect.height - 1;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double dx = std::max({x0 - x, 0.0, x - x1});
      const double dy = std::max({y0 - y, 0.0, y - y1});
      mask.weight[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)] = ramp(std::hypot(dx, dy), 0.0, feather);
    }
  }
  return mask;
}

RegionMask hull_mask(int width, int height, const LandmarkSet& landmarks,
                     const std::vector<std::size_t>& indices, double margin, double feather) {
  if (indices.empty()) throw Error(ErrorCode::InvalidArgument, "hull_mask: no landmark indices");
  std::vector<Point2> pts;
  for (std::size_t i : indices) {
    if (i >= landmarks.size()) {
      throw Error(ErrorCode::InvalidArgument, "hull_mask: landmark index " + std::to_string(i) +
                                                  " out of range");
    }
    pts.push_back(landmarks[i]);
  }
  const std::vector<Point2> hull = convex_hull(pts);
  RegionMask mask{width, height, std::vector<double>(static_cast<std::size_t>(width) *
                                                     static_cast<std::size_t>(height))};
  const double reach = margin + feather + 1.0;
  double min_x = hull[0].x, max_x = hull[0].x, min_y = hull[0].y, max_y = hull[0].y;
  for (const Point2& p : hull) {
    min_x = std::min(min_x, p.x), max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y), max_y = std::max(max_y, p.y);
  }
  const int xa = std::max(0, static_cast<int>(std::floor(min_x - reach)));
  const int xb = std::min(width - 1, static_cast<int>(std::ceil(max_x + reach)));
  const int ya = std::max(0, static_cast<int>(std::floor(min_y - reach)));
  const int yb = std::min(height - 1, static_cast<int>(std::ceil(max_y + reach)));
  for (int y = ya; y <= yb; ++y) {
    for (int x = xa; x <= xb; ++x) {
      const double d = hull_distance({static_cast<double>(x), static_cast<double>(y)}, hull);
      mask.weight[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)] = ramp(d, margin, feather);
    }
  }
  return mask;
}

RegionMask combine(const std::vector<RegionMask>& masks) {
  if (masks.empty()) throw Error(ErrorCode::InvalidArgument, "combine: no masks");
  RegionMask out = masks.front();
  for (const RegionMask& m : masks) {
    if (m.width != out.width || m.height != out.height) {
      throw Error(ErrorCode::DimensionMismatch, "combine: mask sizes differ");
    }
    for (std::size_t i = 0; i < out.weight.size(); ++i) {
      out.weight[i] = std::max(out.weight[i], m.weight[i]);
    }
  }
  return out;
}

RasterImage blend_masked(const RasterImage& base, const RasterImage& overlay,
                         const RegionMask& mask, double opacity) {
  if (!base.same_shape(overlay) || mask.width != base.width() || mask.height != base.height()) {
    throw Error(ErrorCode::DimensionMismatch, "blend_masked: shapes differ");
  }
  RasterImage out(base.width(), base.height(), base.channels());
  for (int y = 0; y < base.height(); ++y) {
    for (int x = 0; x < base.width(); ++x) {
      const double w = std::clamp(opacity * mask.at(x, y), 0.0, 1.0);
      for (int c = 0; c < base.channels(); ++c) {
        out.at(x, y, c) = quantize((1.0 - w) * base.at(x, y, c) + w * overlay.at(x, y, c));
      }
    }
  }
  return out;
}

namespace groups {
std::vector<std::size_t> jaw() { return range(0, 16); }
std::vector<std::size_t> eyes() { return range(36, 47); }
std::vector<std::size_t> nostrils() { return range(31, 35); }
std::vector<std::size_t> face_outline() { return range(0, 26); }
}  // namespace groups

RasterImage reblend_regions(const RasterImage& morph_image, const LandmarkSet& morph_landmarks,
                            const RasterImage& img_a, const LandmarkSet& lm_a, double opacity,
                            double feather) {
  check_dlib(morph_landmarks);
  const RasterImage warped = warp_image(img_a, lm_a, morph_landmarks);
  const int w = morph_image.width(), h = morph_image.height();
  const RegionMask mask = combine({hull_mask(w, h, morph_landmarks, range(36, 41), 3.0, feather),
                                   hull_mask(w, h, morph_landmarks, range(42, 47), 3.0, feather),
                                   hull_mask(w, h, morph_landmarks, groups::nostrils(), 2.0, feather)});
  return blend_masked(morph_image, warped, mask, opacity);
}

RasterImage replace_background(const RasterImage& morph_image,
                               const LandmarkSet& morph_landmarks,
                               const RasterImage& background, double feather) {
  check_dlib(morph_landmarks);
  const RegionMask mask = hull_mask(morph_image.width(), morph_image.height(), morph_landmarks,
                                    groups::face_outline(), 0.0, feather);
  return blend_masked(background, morph_image, mask, 1.0);
}

}  // namespace madkit::morph
