#pragma once

#include <cstddef>

#include "madkit/image.hpp"
#include "madkit/landmarks.hpp"
#include "madkit/morph/delaunay.hpp"

namespace madkit::morph {

/// Appends 8 border points: the 4 corners, then the top, bottom, left and
/// right edge midpoints, using 0-based integer pixel coordinates:
///   (0,0) (w-1,0) (0,h-1) (w-1,h-1) (m,0) (m,h-1) (0,n) (w-1,n)
/// with m = (w-1)/2 and n = (h-1)/2 (integer division).
///
/// Throws if the set is already augmented or a point lies outside
/// [0, w-1] x [0, h-1] (the message names the point index).
LandmarkSet augment_landmarks(const LandmarkSet& landmarks, int width, int height);

struct MorphParams {
  /// Weight of image A in both geometry interpolation and pixel blending.
  double alpha = 0.5;
};

struct MorphResult {
  RasterImage image;
  LandmarkSet landmarks;     ///< target geometry of the output
  TriangleMesh mesh;         ///< triangulation of `landmarks`
  std::size_t skipped_triangles = 0;
};

/// Landmark-driven morph with border points: target landmarks are
/// alpha*lm_a + (1-alpha)*lm_b, each Delaunay triangle of the target is
/// warped from both sources and blended as alpha*A + (1-alpha)*B, then
/// rounded half-to-even and clamped. A pixel on a shared edge belongs to the
/// lowest-index triangle. Pixels outside the mesh (only possible without
/// border points) get the unwarped cross-dissolve.
MorphResult morph(const RasterImage& img_a, const RasterImage& img_b, const LandmarkSet& lm_a,
                  const LandmarkSet& lm_b, MorphParams params);

struct DemorphResult {
  RasterImage image;
  LandmarkSet landmarks;
};

/// Inverts a morph by subtracting the probe's contribution from the
/// reference. Geometry: (lm_ref - factor*lm_probe) / (1-factor). Pixels: both
/// images are warped to that geometry and combined as
/// (R - factor*P) / (1-factor), rounded and clamped. factor must be in [0, 1).
DemorphResult demorph(const RasterImage& reference, const LandmarkSet& lm_ref,
                      const RasterImage& probe, const LandmarkSet& lm_probe, double factor);

/// Warps `image` piecewise-affinely from `from` to `to` (same scheme/count).
RasterImage warp_image(const RasterImage& image, const LandmarkSet& from, const LandmarkSet& to);

}  // namespace madkit::morph
