#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "madkit/image.hpp"
#include "madkit/landmarks.hpp"
#include "madkit/rng.hpp"
#include "madkit/scores.hpp"

namespace madkit_test {

/// Runs `body(rng, case_index)` for `cases` independent seeded cases. The
/// case index is part of the seed, so a failing case can be replayed alone.
template <typename Body>
void for_all(const std::string& name, int cases, Body&& body) {
  for (int i = 0; i < cases; ++i) {
    madkit::Rng rng(madkit::derive_seed(0x5eedULL, name + "#" + std::to_string(i)));
    body(rng, i);
  }
}

inline int uniform_int(madkit::Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

/// Distinct points; with `grid` > 0 coordinates are snapped to a lattice so
/// collinear and cocircular configurations occur often.
inline std::vector<madkit::Point2> random_points(madkit::Rng& rng, int n, double extent, int grid = 0) {
  if (grid > 0) n = std::min(n, (grid + 1) * (grid + 1));
  std::vector<madkit::Point2> pts;
  while (static_cast<int>(pts.size()) < n) {
    madkit::Point2 p{rng.uniform(0, extent), rng.uniform(0, extent)};
    if (grid > 0) {
      p = {static_cast<double>(rng.below(static_cast<std::uint64_t>(grid + 1))) * extent / grid,
           static_cast<double>(rng.below(static_cast<std::uint64_t>(grid + 1))) * extent / grid};
    }
    bool dup = false;
    for (const auto& q : pts) dup = dup || q == p;
    if (!dup) pts.push_back(p);
  }
  return pts;
}

/// Scores drawn from two overlapping normals. With `levels` > 0 they are
/// quantized to that many steps so ties within and across classes appear.
inline madkit::ScoreSet random_scores(madkit::Rng& rng, int negatives, int positives, double shift,
                                      int levels = 0) {
  madkit::ScoreSet s;
  auto draw = [&](double mean) {
    double v = mean + rng.normal();
    if (levels > 0) v = std::round(v * levels) / levels;
    return v;
  };
  for (int i = 0; i < negatives; ++i) s.negative.push_back(draw(0.0));
  for (int i = 0; i < positives; ++i) s.positive.push_back(draw(shift));
  return s;
}

inline madkit::RasterImage random_image(madkit::Rng& rng, int w, int h, int channels) {
  madkit::RasterImage img(w, h, channels);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng.below(256));
  return img;
}

/// Smooth image: sum of a few low-frequency sinusoids per channel.
inline madkit::RasterImage smooth_image(madkit::Rng& rng, int w, int h, int channels) {
  madkit::RasterImage img(w, h, channels);
  for (int c = 0; c < channels; ++c) {
    const double fx = rng.uniform(0.5, 3.0) / w, fy = rng.uniform(0.5, 3.0) / h;
    const double px = rng.uniform(0, 6.28), py = rng.uniform(0, 6.28);
    const double base = rng.uniform(80, 170);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        img.at(x, y, c) = madkit::quantize(base + 50 * std::sin(6.283 * fx * x + px) * std::cos(6.283 * fy * y + py));
      }
    }
  }
  return img;
}

}  // namespace madkit_test
