#include "madkit/landmarks.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "madkit/error.hpp"

namespace madkit {

namespace {
bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}
}  // namespace

LandmarkSet::LandmarkSet(std::vector<Point2> points, std::string scheme)
    : points_(std::move(points)), scheme_(std::move(scheme)) {
  if (scheme_.empty()) throw Error(ErrorCode::InvalidArgument, "landmark scheme must be named");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y)) {
      throw Error(ErrorCode::InvalidArgument,
                  "landmark " + std::to_string(i) + " has a non-finite coordinate");
    }
  }
  std::size_t required = 0;
  if (scheme_ == schemes::kDlib68) {
    required = schemes::kDlib68Count;
  } else if (scheme_ == std::string(schemes::kDlib68) + schemes::kBorderSuffix) {
    required = schemes::kDlib68Count + schemes::kBorderCount;
  }
  if (required != 0 && points_.size() != required) {
    throw Error(ErrorCode::InvalidArgument, "scheme " + scheme_ + " requires " +
                                                std::to_string(required) + " points, got " +
                                                std::to_string(points_.size()));
  }
}

bool LandmarkSet::is_augmented() const noexcept { return ends_with(scheme_, schemes::kBorderSuffix); }

std::string LandmarkSet::base_scheme() const {
  if (!is_augmented()) return scheme_;
  return scheme_.substr(0, scheme_.size() - std::string(schemes::kBorderSuffix).size());
}

LandmarkSet interpolate(const LandmarkSet& a, const LandmarkSet& b, double weight_a) {
  if (a.scheme() != b.scheme() || a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "landmark sets differ in scheme or count");
  }
  const double weight_b = 1.0 - weight_a;
  std::vector<Point2> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = {weight_a * a[i].x + weight_b * b[i].x, weight_a * a[i].y + weight_b * b[i].y};
  }
  return LandmarkSet(std::move(out), a.scheme());
}

LandmarkSet parse_landmarks(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::string scheme;
  std::vector<Point2> points;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (scheme.empty()) {
      if (line.rfind("scheme=", 0) != 0) {
        throw ParseError("landmark file must start with scheme=<name>", line_no, "scheme");
      }
      scheme = line.substr(7);
      if (scheme.empty()) throw ParseError("empty scheme name", line_no, "scheme");
      continue;
    }
    std::istringstream fields(line);
    Point2 p;
    std::string extra;
    if (!(fields >> p.x >> p.y) || (fields >> extra)) {
      throw ParseError("expected two coordinates \"x y\"", line_no, "point");
    }
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ParseError("non-finite landmark coordinate", line_no, "point");
    }
    points.push_back(p);
  }
  if (scheme.empty()) throw ParseError("missing scheme header", std::nullopt, "scheme");
  try {
    return LandmarkSet(std::move(points), scheme);
  } catch (const Error& e) {
    throw ParseError(e.what(), std::nullopt, "points");
  }
}

LandmarkSet read_landmarks(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open landmark file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_landmarks(buffer.str());
}

std::string format_landmarks(const LandmarkSet& landmarks) {
  std::ostringstream out;
  out << "scheme=" << landmarks.scheme() << '\n';
  out << std::setprecision(17);
  for (const auto& p : landmarks.points()) out << p.x << ' ' << p.y << '\n';
  return out.str();
}

void write_landmarks(const LandmarkSet& landmarks, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write landmark file " + path.string());
  out << format_landmarks(landmarks);
}

}  // namespace madkit
