#pragma once
// Reference element: the equilateral triangle with vertices
//   V1 = (-1, -1/sqrt(3)), V2 = (1, -1/sqrt(3)), V3 = (0, 2/sqrt(3)),
// edge length 2, area sqrt(3), centroid at the origin. Edges are ordered
// (V1,V2), (V2,V3), (V3,V1), traversed counterclockwise.

#include <Eigen/Dense>
#include <array>
#include <cmath>

namespace trifr {

inline constexpr double kSqrt3 = 1.7320508075688772935274463415058723669;
inline constexpr double kRefArea = kSqrt3;       // area of the reference triangle
inline constexpr double kRefEdgeLength = 2.0;    // length of each reference edge

inline Eigen::Vector2d ref_vertex(int i) {
  switch (i) {
    case 0: return {-1.0, -1.0 / kSqrt3};
    case 1: return {1.0, -1.0 / kSqrt3};
    default: return {0.0, 2.0 / kSqrt3};
  }
}

struct RefEdge {
  Eigen::Vector2d a, b;       // endpoints, counterclockwise traversal a -> b
  Eigen::Vector2d normal;     // outward unit normal
};

// Edge e runs from vertex e to vertex (e+1) mod 3; the outward unit normal is
// the counterclockwise tangent rotated by -90 degrees: n = (t_y, -t_x)/|t|.
inline RefEdge ref_edge(int e) {
  RefEdge r;
  r.a = ref_vertex(e);
  r.b = ref_vertex((e + 1) % 3);
  const Eigen::Vector2d t = r.b - r.a;
  r.normal = Eigen::Vector2d(t.y(), -t.x()).normalized();
  return r;
}

// Rotation by -120 degrees (clockwise), which maps the triangle onto itself:
// vertex 1 -> 3 -> 2 -> 1.
inline Eigen::Matrix2d ref_rotation() {
  Eigen::Matrix2d r;
  r << -0.5, kSqrt3 / 2.0, -kSqrt3 / 2.0, -0.5;
  return r;
}

// Reflection across the y-axis, the mirror symmetry of the triangle.
inline Eigen::Matrix2d ref_reflection() {
  Eigen::Matrix2d r;
  r << -1.0, 0.0, 0.0, 1.0;
  return r;
}

// Map barycentric coordinates (l1, l2, l3) with respect to (V1, V2, V3) to
// Cartesian coordinates on the reference triangle.
inline Eigen::Vector2d bary_to_xy(double l1, double l2, double l3) {
  return l1 * ref_vertex(0) + l2 * ref_vertex(1) + l3 * ref_vertex(2);
}

}  // namespace trifr
