#pragma once

#include <array>
#include <vector>

#include "umax/geometry.hpp"

namespace umax {

// Quadrature rule in global coordinates. Surface rules also carry one unit
// outward normal per point; other rules leave normals empty.
struct QuadRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  std::vector<Vec2> normals;

  int size() const { return static_cast<int>(points.size()); }
  bool empty() const { return points.empty(); }
  double total() const;
  void append(const QuadRule& other);
};

// Gauss-Legendre nodes and weights on [-1, 1], exact through degree 2n-1.
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Rule on the segment [a, b] exact for polynomial restrictions of degree
// order; weights sum to the segment length.
QuadRule segment_rule(Vec2 a, Vec2 b, int order);

// Tensor Gauss rule on the reference triangle {(0,0),(1,0),(0,1)} through
// the collapsed-square map. All weights positive, exact through degree
// order, weights sum to 1/2. Cached per order.
struct RefRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
};
const RefRule& triangle_rule(int order);

// The cached reference rule mapped affinely onto the triangle (A, B, C).
QuadRule triangle_rule_on(Vec2 A, Vec2 B, Vec2 C, int order);

}  // namespace umax
