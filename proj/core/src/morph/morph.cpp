#include "madkit/morph/morph.hpp"

#include <cmath>
#include <vector>

#include "madkit/error.hpp"
#include "madkit/morph/warp.hpp"

namespace madkit::morph {

LandmarkSet augment_landmarks(const LandmarkSet& landmarks, int width, int height) {
  if (landmarks.is_augmented()) {
    throw Error(ErrorCode::InvalidArgument, "landmarks already augmented");
  }
  if (width <= 0 || height <= 0) throw Error(ErrorCode::InvalidArgument, "image size must be positive");
  const double max_x = width - 1;
  const double max_y = height - 1;
  std::vector<Point2> points = landmarks.points();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point2& p = points[i];
    if (p.x < 0.0 || p.y < 0.0 || p.x > max_x || p.y > max_y) {
      throw Error(ErrorCode::InvalidArgument,
                  "landmark " + std::to_string(i) + " lies outside the image");
    }
  }
  const double mid_x = (width - 1) / 2;
  const double mid_y = (height - 1) / 2;
  for (Point2 p : {Point2{0, 0}, Point2{max_x, 0}, Point2{0, max_y}, Point2{max_x, max_y},
                   Point2{mid_x, 0}, Point2{mid_x, max_y}, Point2{0, mid_y}, Point2{max_x, mid_y}}) {
    points.push_back(p);
  }
  return LandmarkSet(std::move(points), landmarks.scheme() + schemes::kBorderSuffix);
}

namespace {

void check_compatible(const RasterImage& a, const RasterImage& b, const LandmarkSet& lm_a,
                      const LandmarkSet& lm_b) {
  if (a.empty() || !a.same_shape(b)) {
    throw Error(ErrorCode::DimensionMismatch, "images must be non-empty and of equal shape");
  }
  if (lm_a.scheme() != lm_b.scheme() || lm_a.size() != lm_b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "landmark sets differ in scheme or count");
  }
}

Triangle corners(const std::vector<Point2>& pts, const TriangleIndices& t) {
  return {pts[t[0]], pts[t[1]], pts[t[2]]};
}

// Visits every pixel covered by the mesh exactly once, owned by the lowest
// triangle index, with the matching preimage in each source geometry.
// Returns the number of skipped (degenerate) triangles; `covered` marks
// visited pixels.
template <typename Visit>
std::size_t sweep_mesh(const TriangleMesh& mesh, const std::vector<const LandmarkSet*>& sources,
                       int width, int height, std::vector<std::uint8_t>& covered, Visit&& visit) {
  covered.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
  std::size_t skipped = 0;
  std::vector<Point2> pre(sources.size());
  for (const TriangleIndices& t : mesh.triangles) {
    const Triangle dst = corners(mesh.vertices, t);
    bool degenerate = triangle_area(dst) < kDegenerateArea;
    std::vector<AffineMap> maps;
    if (!degenerate) {
      for (const LandmarkSet* src : sources) {
        const Triangle s = corners(src->points(), t);
        if (triangle_area(s) < kDegenerateArea) {
          degenerate = true;
          break;
        }
        maps.emplace_back(dst, s);
      }
    }
    if (degenerate) {
      ++skipped;
      continue;
    }
    for_each_pixel_in(dst, width, height, [&](int x, int y) {
      std::uint8_t& owner = covered[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                                    static_cast<std::size_t>(x)];
      if (owner) return;
      owner = 1;
      const Point2 p{static_cast<double>(x), static_cast<double>(y)};
      for (std::size_t k = 0; k < maps.size(); ++k) pre[k] = maps[k](p);
      visit(x, y, pre);
    });
  }
  return skipped;
}

TriangleMesh mesh_for(const LandmarkSet& target) { return delaunay(target.points()); }

}  // namespace

MorphResult morph(const RasterImage& img_a, const RasterImage& img_b, const LandmarkSet& lm_a,
                  const LandmarkSet& lm_b, MorphParams params) {
  check_compatible(img_a, img_b, lm_a, lm_b);
  const double alpha = params.alpha;
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in [0, 1]");
  }
  const double beta = 1.0 - alpha;
  MorphResult result;
  result.landmarks = interpolate(lm_a, lm_b, alpha);
  result.mesh = mesh_for(result.landmarks);

  const int w = img_a.width(), h = img_a.height(), ch = img_a.channels();
  RasterImage out(w, h, ch);
  std::vector<std::uint8_t> covered;
  result.skipped_triangles =
      sweep_mesh(result.mesh, {&lm_a, &lm_b}, w, h, covered,
                 [&](int x, int y, const std::vector<Point2>& pre) {
                   for (int c = 0; c < ch; ++c) {
                     const double va = sample_bilinear(img_a, pre[0].x, pre[0].y, c);
                     const double vb = sample_bilinear(img_b, pre[1].x, pre[1].y, c);
                     out.at(x, y, c) = quantize(alpha * va + beta * vb);
                   }
                 });
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (covered[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                  static_cast<std::size_t>(x)]) {
        continue;
      }
      for (int c = 0; c < ch; ++c) {
        out.at(x, y, c) = quantize(alpha * img_a.at(x, y, c) + beta * img_b.at(x, y, c));
      }
    }
  }
  result.image = std::move(out);
  return result;
}

DemorphResult demorph(const RasterImage& reference, const LandmarkSet& lm_ref,
                      const RasterImage& probe, const LandmarkSet& lm_probe, double factor) {
  check_compatible(reference, probe, lm_ref, lm_probe);
  if (!(factor >= 0.0 && factor < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "demorph factor must lie in [0, 1)");
  }
  const double keep = 1.0 - factor;
  std::vector<Point2> geometry(lm_ref.size());
  for (std::size_t i = 0; i < geometry.size(); ++i) {
    geometry[i] = {(lm_ref[i].x - factor * lm_probe[i].x) / keep,
                   (lm_ref[i].y - factor * lm_probe[i].y) / keep};
  }
  DemorphResult result;
  result.landmarks = LandmarkSet(std::move(geometry), lm_ref.scheme());

  const int w = reference.width(), h = reference.height(), ch = reference.channels();
  RasterImage out(w, h, ch);
  auto combine = [&](double r, double p) { return quantize((r - factor * p) / keep); };
  std::vector<std::uint8_t> covered;
  if (factor == 0.0) {
    covered.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
  } else {
    sweep_mesh(mesh_for(result.landmarks), {&lm_ref, &lm_probe}, w, h, covered,
               [&](int x, int y, const std::vector<Point2>& pre) {
                 for (int c = 0; c < ch; ++c) {
                   out.at(x, y, c) = combine(sample_bilinear(reference, pre[0].x, pre[0].y, c),
                                             sample_bilinear(probe, pre[1].x, pre[1].y, c));
                 }
               });
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (covered[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                  static_cast<std::size_t>(x)]) {
        continue;
      }
      for (int c = 0; c < ch; ++c) out.at(x, y, c) = combine(reference.at(x, y, c), probe.at(x, y, c));
    }
  }
  result.image = std::move(out);
  return result;
}

RasterImage warp_image(const RasterImage& image, const LandmarkSet& from, const LandmarkSet& to) {
  if (image.empty()) throw Error(ErrorCode::InvalidArgument, "warp_image: empty image");
  if (from.scheme() != to.scheme() || from.size() != to.size()) {
    throw Error(ErrorCode::DimensionMismatch, "landmark sets differ in scheme or count");
  }
  const int w = image.width(), h = image.height(), ch = image.channels();
  RasterImage out = image;
  std::vector<std::uint8_t> covered;
  sweep_mesh(mesh_for(to), {&from}, w, h, covered,
             [&](int x, int y, const std::vector<Point2>& pre) {
               for (int c = 0; c < ch; ++c) {
                 out.at(x, y, c) = quantize(sample_bilinear(image, pre[0].x, pre[0].y, c));
               }
             });
  return out;
}

}  // namespace madkit::morph
