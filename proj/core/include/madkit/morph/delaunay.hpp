#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "madkit/landmarks.hpp"

namespace madkit::morph {

/// Vertex indices of one triangle, counter-clockwise in image coordinates
/// (x right, y down, so "counter-clockwise" means positive signed area).
using TriangleIndices = std::array<std::size_t, 3>;

struct TriangleMesh {
  std::vector<Point2> vertices;
  std::vector<TriangleIndices> triangles;
};

/// Twice the signed area of (a, b, c).
double orient2d(Point2 a, Point2 b, Point2 c) noexcept;

/// > 0 when d lies strictly inside the circumcircle of the positively
/// oriented triangle (a, b, c).
double incircle(Point2 a, Point2 b, Point2 c, Point2 d) noexcept;

/// Bowyer–Watson triangulation covering the convex hull of `points`.
///
/// The super-triangle is symbolic: its three vertices sit infinitely far away
/// in fixed directions, so hull edges are never lost to a finite bounding
/// triangle and collinear runs along the hull (image borders) are handled
/// exactly. Points are inserted in lexicographic (x, y) order and a point on
/// a circumcircle counts as outside, which makes cocircular ties resolve the
/// same way for any input permutation. Triangles are returned with their
/// lowest vertex index first, sorted.
///
/// Throws ErrorCode::InvalidArgument for fewer than 3 points, duplicates, or
/// an all-collinear input.
TriangleMesh delaunay(std::span<const Point2> points);

}  // namespace madkit::morph
