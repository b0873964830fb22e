#include "madkit/features/landmark_features.hpp"

#include <cmath>
#include <numbers>

#include "madkit/error.hpp"

namespace madkit::features {

namespace {

Point2 mean_of(const LandmarkSet& lm, std::size_t first, std::size_t last) {
  Point2 s;
  for (std::size_t i = first; i <= last; ++i) s = s + lm[i];
  return (1.0 / static_cast<double>(last - first + 1)) * s;
}

void check(const LandmarkSet& lm) {
  if (lm.base_scheme() != schemes::kDlib68 || lm.size() < schemes::kDlib68Count) {
    throw Error(ErrorCode::InvalidArgument, "landmark features need dlib68 landmarks, got " + lm.scheme());
  }
}

double wrap(double angle) {
  constexpr double pi = std::numbers::pi;
  while (angle > pi) angle -= 2 * pi;
  while (angle <= -pi) angle += 2 * pi;
  return angle;
}

}  // namespace

LandmarkSet normalize_to_eyes(const LandmarkSet& landmarks) {
  check(landmarks);
  const Point2 left = mean_of(landmarks, 36, 41);
  const Point2 right = mean_of(landmarks, 42, 47);
  const Point2 mid = 0.5 * (left + right);
  const Point2 d = right - left;
  const double len2 = d.x * d.x + d.y * d.y;
  if (len2 == 0.0) throw Error(ErrorCode::Numeric, "eye centres coincide");
  // Multiply by conj(d) / |d|^2 in complex form.
  const double c = d.x / len2, s = -d.y / len2;
  std::vector<Point2> out(schemes::kDlib68Count);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Point2 p = landmarks[i] - mid;
    out[i] = {p.x * c - p.y * s, p.x * s + p.y * c};
  }
  return LandmarkSet(std::move(out), schemes::kDlib68);
}

const std::vector<std::pair<int, int>>& angle_segments() {
  static const std::vector<std::pair<int, int>> segments = [] {
    std::vector<std::pair<int, int>> out;
    auto chain = [&](int first, int last) {
      for (int i = first; i < last; ++i) out.emplace_back(i, i + 1);
    };
    auto loop = [&](int first, int last) {
      chain(first, last);
      out.emplace_back(last, first);
    };
    chain(0, 16);
    chain(17, 21);
    chain(22, 26);
    chain(27, 30);
    chain(31, 35);
    loop(36, 41);
    loop(42, 47);
    loop(48, 59);
    loop(60, 67);
    return out;
  }();
  return segments;
}

std::vector<double> landmark_features(const LandmarkSet& lm_ref, const LandmarkSet& lm_probe,
                                      LandmarkFeatureMode mode) {
  if (lm_ref.scheme() != lm_probe.scheme() || lm_ref.size() != lm_probe.size()) {
    throw Error(ErrorCode::DimensionMismatch, "landmark sets differ in scheme or count");
  }
  const LandmarkSet a = normalize_to_eyes(lm_ref);
  const LandmarkSet b = normalize_to_eyes(lm_probe);
  std::vector<double> out;
  if (mode == LandmarkFeatureMode::Distances) {
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(std::hypot(a[i].x - b[i].x, a[i].y - b[i].y));
  } else {
    for (const auto& [i, j] : angle_segments()) {
      const Point2 da = a[static_cast<std::size_t>(j)] - a[static_cast<std::size_t>(i)];
      const Point2 db = b[static_cast<std::size_t>(j)] - b[static_cast<std::size_t>(i)];
      out.push_back(wrap(std::atan2(da.y, da.x) - std::atan2(db.y, db.x)));
    }
  }
  return out;
}

}  // namespace madkit::features
