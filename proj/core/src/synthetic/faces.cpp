#include "madkit/synthetic/faces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "madkit/error.hpp"
#include "madkit/morph/morph.hpp"
#include "madkit/morph/regions.hpp"
#include "madkit/rng.hpp"

namespace madkit::synthetic {

namespace {

constexpr double kPi = std::numbers::pi;

// Canonical layout for a 180 px eye distance, eye line at y = 430 and the
// face centred on x = 360 of a 720 x 960 frame.
std::vector<Point2> canonical_points() {
  std::vector<Point2> p;
  for (int i = 0; i <= 16; ++i) {
    const double t = kPi * i / 16.0;
    p.push_back({360.0 - 165.0 * std::cos(t), 440.0 + 240.0 * std::sin(t)});
  }
  const double brow_y[5] = {378, 366, 362, 364, 372};
  for (int i = 0; i < 5; ++i) p.push_back({205.0 + 28.0 * i, brow_y[i]});
  for (int i = 0; i < 5; ++i) p.push_back({403.0 + 28.0 * i, brow_y[4 - i]});
  for (int i = 0; i < 4; ++i) p.push_back({360.0, 440.0 + 40.0 * i});
  const double nose_y[5] = {575, 582, 585, 582, 575};
  for (int i = 0; i < 5; ++i) p.push_back({320.0 + 20.0 * i, nose_y[i]});
  const Point2 eye[6] = {{-40, 0}, {-15, -12}, {15, -12}, {40, 0}, {15, 12}, {-15, 12}};
  for (const Point2& e : eye) p.push_back(Point2{270, 430} + e);
  for (const Point2& e : eye) p.push_back(Point2{450, 430} + e);
  for (int k = 0; k < 12; ++k) {
    const double t = kPi * k / 6.0;
    p.push_back({360.0 - 60.0 * std::cos(t), 640.0 - 24.0 * std::sin(t)});
  }
  for (int k = 0; k < 8; ++k) {
    const double t = kPi * k / 4.0;
    p.push_back({360.0 - 40.0 * std::cos(t), 640.0 - 8.0 * std::sin(t)});
  }
  return p;
}

// Band-limited noise with unit variance at the lattice nodes.
std::vector<double> smooth_field(int width, int height, double cell, Rng& rng) {
  cell = std::max(cell, 1.0);
  const int gw = static_cast<int>(width / cell) + 2;
  const int gh = static_cast<int>(height / cell) + 2;
  std::vector<double> grid(static_cast<std::size_t>(gw) * static_cast<std::size_t>(gh));
  for (double& g : grid) g = rng.normal();
  std::vector<double> field(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    const double gy = y / cell;
    const int y0 = static_cast<int>(gy);
    const double fy = gy - y0;
    const double sy = fy * fy * (3 - 2 * fy);
    for (int x = 0; x < width; ++x) {
      const double gx = x / cell;
      const int x0 = static_cast<int>(gx);
      const double fx = gx - x0;
      const double sx = fx * fx * (3 - 2 * fx);
      auto g = [&](int i, int j) { return grid[static_cast<std::size_t>(j) * gw + i]; };
      const double top = (1 - sx) * g(x0, y0) + sx * g(x0 + 1, y0);
      const double bottom = (1 - sx) * g(x0, y0 + 1) + sx * g(x0 + 1, y0 + 1);
      field[static_cast<std::size_t>(y) * width + x] = (1 - sy) * top + sy * bottom;
    }
  }
  return field;
}

std::vector<std::size_t> range(std::size_t a, std::size_t b) {
  std::vector<std::size_t> out;
  for (std::size_t i = a; i <= b; ++i) out.push_back(i);
  return out;
}

using Colour = std::array<double, 3>;

void paint(std::vector<double>& canvas, int channels, const morph::RegionMask& mask, const Colour& c,
           double opacity = 1.0) {
  for (std::size_t i = 0; i < mask.weight.size(); ++i) {
    const double w = opacity * mask.weight[i];
    if (w <= 0.0) continue;
    for (int ch = 0; ch < channels; ++ch) {
      double& v = canvas[i * static_cast<std::size_t>(channels) + static_cast<std::size_t>(ch)];
      v = (1 - w) * v + w * c[static_cast<std::size_t>(ch)];
    }
  }
}

Point2 clamp_to(Point2 p, int width, int height) {
  return {std::clamp(p.x, 0.0, width - 1.0), std::clamp(p.y, 0.0, height - 1.0)};
}

}  // namespace

LandmarkSet template_landmarks(const FaceConfig& config) {
  if (config.width < 16 || config.height < 16 || !(config.inter_eye > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "face config needs a positive size and eye distance");
  }
  const double s = config.inter_eye / 180.0;
  const Point2 centre{config.width / 2.0, config.height * 430.0 / 960.0};
  std::vector<Point2> out;
  for (const Point2& p : canonical_points()) {
    out.push_back(clamp_to(centre + s * (p - Point2{360.0, 430.0}), config.width, config.height));
  }
  return LandmarkSet(std::move(out), schemes::kDlib68);
}

FaceIdentity make_identity(std::uint64_t seed, const FaceConfig& config) {
  FaceIdentity id;
  id.seed = seed;
  Rng rng(derive_seed(seed, "face-identity"));
  const LandmarkSet base = template_landmarks(config);
  const double s = config.inter_eye / 180.0;
  // Low-order shape change (face width, jaw length) plus per-point jitter.
  const double widen = 1.0 + 0.05 * rng.normal();
  const double lengthen = 1.0 + 0.05 * rng.normal();
  const Point2 centre{config.width / 2.0, config.height * 430.0 / 960.0};
  std::vector<Point2> pts;
  for (const Point2& p : base.points()) {
    const Point2 d = p - centre;
    Point2 q{centre.x + widen * d.x, centre.y + (d.y > 0 ? lengthen : 1.0) * d.y};
    q = q + Point2{config.shape_sigma * s * rng.normal(), config.shape_sigma * s * rng.normal()};
    pts.push_back(clamp_to(q, config.width, config.height));
  }
  id.landmarks = LandmarkSet(std::move(pts), schemes::kDlib68);

  const int w = config.width, h = config.height, ch = config.color ? 3 : 1;
  auto colour = [&](Colour mean, double spread) {
    const double shift = spread * rng.normal();
    Colour c;
    for (std::size_t k = 0; k < 3; ++k) c[k] = std::clamp(mean[k] + shift + 0.3 * spread * rng.normal(), 0.0, 255.0);
    if (!config.color) c = {0.299 * c[0] + 0.587 * c[1] + 0.114 * c[2], 0, 0};
    return c;
  };
  const Colour background = colour({150, 165, 185}, 20);
  const Colour skin = colour({205, 165, 140}, 22);
  const Colour brow = colour({70, 55, 45}, 12);
  const Colour eye = colour({55, 50, 50}, 8);
  const Colour lip = colour({175, 95, 95}, 12);
  const Colour nostril = colour({150, 105, 90}, 10);

  std::vector<double> canvas(static_cast<std::size_t>(w) * h * ch);
  for (std::size_t i = 0; i < canvas.size(); ++i) canvas[i] = background[i % static_cast<std::size_t>(ch)];
  const LandmarkSet& lm = id.landmarks;
  paint(canvas, ch, morph::hull_mask(w, h, lm, morph::groups::face_outline(), 0.0, 6.0 * s), skin);
  paint(canvas, ch, morph::hull_mask(w, h, lm, range(17, 21), 3.0 * s, 3.0 * s), brow);
  paint(canvas, ch, morph::hull_mask(w, h, lm, range(22, 26), 3.0 * s, 3.0 * s), brow);
  paint(canvas, ch, morph::hull_mask(w, h, lm, range(36, 41), 0.0, 2.0 * s), eye);
  paint(canvas, ch, morph::hull_mask(w, h, lm, range(42, 47), 0.0, 2.0 * s), eye);
  paint(canvas, ch, morph::hull_mask(w, h, lm, range(31, 35), 2.0 * s, 3.0 * s), nostril, 0.8);
  paint(canvas, ch, morph::hull_mask(w, h, lm, range(48, 59), 0.0, 3.0 * s), lip);

  // Broad shading and fine texture.
  const auto shade = smooth_field(w, h, 160.0 * s, rng);
  const auto grain = smooth_field(w, h, config.texture_scale, rng);
  RasterImage img(w, h, ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * w + x;
      const double delta = 12.0 * shade[p] + config.texture_amplitude * grain[p];
      for (int c = 0; c < ch; ++c) img.at(x, y, c) = quantize(canvas[p * ch + c] + delta);
    }
  }
  id.appearance = std::move(img);
  return id;
}

FaceSample render_sample(const FaceIdentity& identity, std::uint64_t seed, const SampleVariation& variation,
                         const FaceConfig& config) {
  Rng rng(derive_seed(seed, "face-sample"));
  const int w = identity.appearance.width(), h = identity.appearance.height();
  const Point2 shift{variation.pose_sigma * rng.normal(), variation.pose_sigma * rng.normal()};
  std::vector<Point2> pts;
  for (const Point2& p : identity.landmarks.points()) {
    const Point2 jitter{0.5 * variation.pose_sigma * rng.normal(), 0.5 * variation.pose_sigma * rng.normal()};
    pts.push_back(clamp_to(p + shift + jitter, w, h));
  }
  FaceSample sample;
  sample.landmarks = LandmarkSet(std::move(pts), identity.landmarks.scheme());
  const RasterImage warped =
      morph::warp_image(identity.appearance, morph::augment_landmarks(identity.landmarks, w, h),
                        morph::augment_landmarks(sample.landmarks, w, h));
  const double gain = 1.0 + variation.gain_sigma * rng.normal();
  const double bias = variation.bias_sigma * rng.normal();
  RasterImage out(w, h, warped.channels());
  for (std::size_t i = 0; i < out.data().size(); ++i) {
    double v = gain * warped.data()[i] + bias;
    if (variation.noise_sigma > 0.0) v += variation.noise_sigma * rng.normal();
    out.data()[i] = quantize(v);
  }
  sample.image = variation.grayscale ? to_grayscale(out) : std::move(out);
  (void)config;
  return sample;
}

}  // namespace madkit::synthetic
