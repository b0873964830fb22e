#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace madkit {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
  friend auto operator<=>(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

namespace schemes {
inline constexpr const char* kDlib68 = "dlib68";
/// Suffix appended once border points have been added.
inline constexpr const char* kBorderSuffix = "+border8";
inline constexpr std::size_t kDlib68Count = 68;
inline constexpr std::size_t kBorderCount = 8;
}  // namespace schemes

/// Ordered landmark points plus the name of their convention.
///
/// Scheme "dlib68" requires exactly 68 points; "dlib68+border8" requires 76.
/// Any other scheme name is accepted with an arbitrary count.
class LandmarkSet {
 public:
  LandmarkSet() = default;
  LandmarkSet(std::vector<Point2> points, std::string scheme);

  const std::vector<Point2>& points() const noexcept { return points_; }
  const std::string& scheme() const noexcept { return scheme_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Point2& operator[](std::size_t i) const { return points_[i]; }

  bool is_augmented() const noexcept;
  /// Scheme name without the border suffix.
  std::string base_scheme() const;

  friend bool operator==(const LandmarkSet&, const LandmarkSet&) = default;

 private:
  std::vector<Point2> points_;
  std::string scheme_;
};

/// Elementwise weight_a * a + (1 - weight_a) * b. Schemes and counts must agree.
LandmarkSet interpolate(const LandmarkSet& a, const LandmarkSet& b, double weight_a);

/// Text format: first line "scheme=<name>", then one "x y" pair per line.
LandmarkSet read_landmarks(const std::filesystem::path& path);
LandmarkSet parse_landmarks(const std::string& text);
void write_landmarks(const LandmarkSet& landmarks, const std::filesystem::path& path);
std::string format_landmarks(const LandmarkSet& landmarks);

}  // namespace madkit
