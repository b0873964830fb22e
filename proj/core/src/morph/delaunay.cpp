#include "madkit/morph/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "madkit/error.hpp"

namespace madkit::morph {

double orient2d(Point2 a, Point2 b, Point2 c) noexcept {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

double incircle(Point2 a, Point2 b, Point2 c, Point2 d) noexcept {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  return alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
         clift * (adx * bdy - bdx * ady);
}

namespace {

struct Vec {
  double x, y;
};

double cross(Vec u, Vec v) { return u.x * v.y - u.y * v.x; }
double dotv(Vec u, Vec v) { return u.x * v.x + u.y * v.y; }
Vec sub(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// Relative error bound for the incircle determinant; results inside it are
// treated as cocircular.
double incircle_bound(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double adx = std::abs(a.x - d.x), ady = std::abs(a.y - d.y);
  const double bdx = std::abs(b.x - d.x), bdy = std::abs(b.y - d.y);
  const double cdx = std::abs(c.x - d.x), cdy = std::abs(c.y - d.y);
  const double permanent = (adx * adx + ady * ady) * (bdx * cdy + cdx * bdy) +
                           (bdx * bdx + bdy * bdy) * (cdx * ady + adx * cdy) +
                           (cdx * cdx + cdy * cdy) * (adx * bdy + bdx * ady);
  return 1e-12 * permanent;
}

double orient_bound(Point2 a, Point2 b, Point2 c) {
  return 1e-14 * (std::abs((b.x - a.x) * (c.y - a.y)) + std::abs((b.y - a.y) * (c.x - a.x)));
}

int robust_orient(Point2 a, Point2 b, Point2 c) {
  const double det = orient2d(a, b, c);
  if (std::abs(det) <= orient_bound(a, b, c)) return 0;
  return sign(det);
}

class Triangulator {
 public:
  explicit Triangulator(std::vector<Point2> pts) : pts_(std::move(pts)) {
    const std::size_t n = pts_.size();
    double minx = pts_[0].x, maxx = minx, miny = pts_[0].y, maxy = miny;
    for (const auto& p : pts_) {
      minx = std::min(minx, p.x);
      maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y);
      maxy = std::max(maxy, p.y);
    }
    center_ = {0.5 * (minx + maxx), 0.5 * (miny + maxy)};
    // Irrational-looking angles keep the infinite directions off the axis
    // directions that image-border landmarks line up with.
    constexpr double kTau = 6.283185307179586;
    for (int k = 0; k < 3; ++k) {
      const double theta = 0.3141592653589793 + k * kTau / 3.0;
      dirs_[k] = {std::cos(theta), std::sin(theta)};
    }
    tris_.push_back({{n, n + 1, n + 2}, true});
  }

  void insert(std::size_t p) {
    const Point2 point = pts_[p];
    bad_.clear();
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (tris_[t].alive && in_circumcircle(tris_[t].v, point)) bad_.push_back(t);
    }
    if (bad_.empty()) throw Error(ErrorCode::Numeric, "delaunay: point not located in mesh");
    // Edges of the cavity seen exactly once form its boundary.
    edge_count_.clear();
    for (std::size_t t : bad_) {
      const auto& v = tris_[t].v;
      for (int e = 0; e < 3; ++e) {
        std::size_t a = v[e], b = v[(e + 1) % 3];
        if (a > b) std::swap(a, b);
        ++edge_count_[{a, b}];
      }
      tris_[t].alive = false;
    }
    for (const auto& [edge, count] : edge_count_) {
      if (count == 1) tris_.push_back({{edge.first, edge.second, p}, true});
    }
    if (tris_.size() > 8 * pts_.size() + 64) compact();
  }

  std::vector<TriangleIndices> finite_triangles() const {
    std::vector<TriangleIndices> out;
    const std::size_t n = pts_.size();
    for (const auto& t : tris_) {
      if (!t.alive) continue;
      if (t.v[0] >= n || t.v[1] >= n || t.v[2] >= n) continue;
      out.push_back(t.v);
    }
    return out;
  }

 private:
  struct Tri {
    TriangleIndices v;
    bool alive;
  };

  bool is_infinite(std::size_t v) const { return v >= pts_.size(); }
  Vec dir(std::size_t v) const { return dirs_[v - pts_.size()]; }

  bool in_circumcircle(const TriangleIndices& v, Point2 p) const {
    int infinite = 0;
    for (std::size_t x : v) infinite += is_infinite(x) ? 1 : 0;
    if (infinite == 3) return true;
    if (infinite == 0) {
      const Point2 a = pts_[v[0]], b = pts_[v[1]], c = pts_[v[2]];
      const int o = sign(orient2d(a, b, c));
      if (o == 0) return false;
      const double det = incircle(a, b, c, p) * o;
      return det > incircle_bound(a, b, c, p);
    }
    if (infinite == 1) {
      std::size_t fa = 0, fb = 0, inf = 0;
      int k = 0;
      for (std::size_t x : v) {
        if (is_infinite(x)) {
          inf = x;
        } else {
          (k++ == 0 ? fa : fb) = x;
        }
      }
      return in_halfplane(pts_[fa], pts_[fb], dir(inf), p);
    }
    std::size_t finite = 0;
    std::size_t inf[2] = {0, 0};
    int k = 0;
    for (std::size_t x : v) {
      if (is_infinite(x)) {
        inf[k++] = x;
      } else {
        finite = x;
      }
    }
    return in_wedge_circle(pts_[finite], dir(inf[0]), dir(inf[1]), p);
  }

  // Limit of the circumcircle of (a, b, center + R*d) as R grows: the open
  // half-plane on the far vertex's side of line ab plus the open chord ab.
  bool in_halfplane(Point2 a, Point2 b, Vec d, Point2 p) const {
    const Vec ab = sub(b, a);
    int far_side = sign(cross(ab, d));
    if (far_side == 0) far_side = sign(cross(ab, sub(center_, a)));
    if (far_side == 0) far_side = 1;
    const int side = robust_orient(a, b, p);
    if (side != 0) return side == far_side;
    const Vec ap = sub(p, a);
    const Vec bp = sub(p, b);
    return dotv(ap, ab) > 0.0 && dotv(bp, Vec{-ab.x, -ab.y}) > 0.0;
  }

  // Limit of the circumcircle through a, center + R*di, center + R*dj.
  // First order: the side of the tangent line at a; second order resolves
  // points exactly on that line.
  bool in_wedge_circle(Point2 a, Vec di, Vec dj, Point2 p) const {
    const Vec x = sub(p, a);
    // c0 = circumcenter of (0, di, dj): solve 2 [di; dj] c0 = [1; 1].
    const double det = 2.0 * cross(di, dj);
    const Vec c0 = {(dj.y - di.y) / det, (di.x - dj.x) / det};
    const double first = dotv(x, c0);
    const double scale = std::sqrt(dotv(x, x)) * std::sqrt(dotv(c0, c0));
    if (std::abs(first) > 1e-14 * scale) return first > 0.0;
    const Vec e = sub(center_, a);
    const double ri = dotv(di, e) - dotv(e, c0);
    const double rj = dotv(dj, e) - dotv(e, c0);
    // [di; dj] q0 = [ri; rj]
    const double d2 = cross(di, dj);
    const Vec q0 = {(ri * dj.y - rj * di.y) / d2, (di.x * rj - dj.x * ri) / d2};
    return dotv(x, x) < 2.0 * dotv(x, q0);
  }

  void compact() {
    std::erase_if(tris_, [](const Tri& t) { return !t.alive; });
  }

  std::vector<Point2> pts_;
  Point2 center_{};
  Vec dirs_[3]{};
  std::vector<Tri> tris_;
  std::vector<std::size_t> bad_;
  std::map<std::pair<std::size_t, std::size_t>, int> edge_count_;
};

}  // namespace

TriangleMesh delaunay(std::span<const Point2> points) {
  const std::size_t n = points.size();
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "delaunay: need at least 3 points");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y)) {
      throw Error(ErrorCode::InvalidArgument,
                  "delaunay: point " + std::to_string(i) + " is not finite");
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  for (std::size_t k = 1; k < n; ++k) {
    if (points[order[k]] == points[order[k - 1]]) {
      throw Error(ErrorCode::InvalidArgument,
                  "delaunay: duplicate points " + std::to_string(order[k - 1]) + " and " +
                      std::to_string(order[k]));
    }
  }

  std::vector<Point2> sorted(n);
  for (std::size_t k = 0; k < n; ++k) sorted[k] = points[order[k]];

  bool collinear = true;
  for (std::size_t k = 2; k < n && collinear; ++k) {
    if (robust_orient(sorted[0], sorted[1], sorted[k]) != 0) collinear = false;
  }
  if (collinear) throw Error(ErrorCode::InvalidArgument, "delaunay: all points are collinear");

  Triangulator tri(sorted);
  for (std::size_t k = 0; k < n; ++k) tri.insert(k);

  TriangleMesh mesh;
  mesh.vertices.assign(points.begin(), points.end());
  for (auto t : tri.finite_triangles()) {
    TriangleIndices v = {order[t[0]], order[t[1]], order[t[2]]};
    const double o = orient2d(points[v[0]], points[v[1]], points[v[2]]);
    // Zero-area slivers cover no pixels; dropping them keeps coverage intact.
    if (std::abs(o) <= orient_bound(points[v[0]], points[v[1]], points[v[2]])) continue;
    if (o < 0) std::swap(v[1], v[2]);
    const auto lowest = std::min_element(v.begin(), v.end()) - v.begin();
    std::rotate(v.begin(), v.begin() + lowest, v.end());
    mesh.triangles.push_back(v);
  }
  std::sort(mesh.triangles.begin(), mesh.triangles.end());
  return mesh;
}

}  // namespace madkit::morph
