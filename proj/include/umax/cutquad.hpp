#pragma once

#include <array>

#include "umax/classify.hpp"
#include "umax/geometry.hpp"
#include "umax/mesh.hpp"
#include "umax/quadrature.hpp"

namespace umax {

// Rules for the part of a triangle inside the domain. The triangle is
// subdivided uniformly (depth levels of 4-way refinement); sub-triangles
// entirely on one side take the standard rule or nothing, and the ones
// still crossing the boundary at the deepest level are decomposed into a
// straight part plus a thin region bounded by the lifted boundary arc,
// integrated in fan coordinates so every weight stays positive.
QuadRule cut_volume_on_triangle(const std::array<Vec2, 3>& tri,
                                const LevelSet& ls, int order, int depth);

// Line rule along the boundary arcs crossing the triangle: chords of the
// deepest cut sub-triangles lifted onto the zero level set, weighted by the
// arc length element, with unit outward normals per point.
QuadRule surface_on_triangle(const std::array<Vec2, 3>& tri,
                             const LevelSet& ls, int order, int depth);

// Rule over the inside part of the segment [a, b] (possibly several
// pieces); empty when the segment lies outside.
QuadRule cut_face_on_segment(Vec2 a, Vec2 b, const LevelSet& ls, int order);

// Cell- and face-indexed wrappers.
QuadRule cut_volume_quadrature(const BackgroundMesh& mesh, int cell,
                               const LevelSet& ls, int order, int depth);
QuadRule surface_quadrature(const BackgroundMesh& mesh, int cell,
                            const LevelSet& ls, int order, int depth);
QuadRule cut_face_quadrature(const BackgroundMesh& mesh, int face,
                             const LevelSet& ls, int order);

// Closest boundary point above a chord point: c(s) = q0 + s (q1 - q0)
// pushed onto the zero level set along the gradient direction. Used by the
// surface rule and the curved-region volume rule; exposed for tests.
struct LiftedPoint {
  Vec2 x;       // point on the boundary
  Vec2 dxds;    // derivative along the chord parameter
  Vec2 normal;  // unit outward
};
LiftedPoint lift_chord_point(const LevelSet& ls, Vec2 q0, Vec2 q1, double s,
                             double step_limit);

// All rules needed by assembly over one classification, in global
// coordinates. Face rules are only built for faces between active cells;
// full-cell and surface rules only for cut cells.
struct CutGeometry {
  int order = 0, depth = 0;
  std::vector<QuadRule> cell_inside;  // per active cell
  std::vector<QuadRule> cell_full;    // per active cell, cut cells only
  std::vector<QuadRule> surface;      // per active cell, cut cells only
  std::vector<QuadRule> face_inside;  // per face
  std::vector<QuadRule> face_full;    // per face
};

CutGeometry build_cut_geometry(const BackgroundMesh& mesh,
                               const CutClassification& cls,
                               const LevelSet& ls, int order, int depth);

}  // namespace umax
