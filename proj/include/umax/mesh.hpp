#pragma once

#include <array>
#include <vector>

#include "umax/geometry.hpp"

namespace umax {

struct Face {
  int v0 = -1, v1 = -1;       // vertex ids, v0 < v1
  int left = -1, right = -1;  // adjacent cells; right = -1 on the outer box
  double length = 0.0;
  Vec2 normal;    // unit, oriented out of the left cell
  Vec2 midpoint;

  bool on_boundary() const { return right < 0; }
};

// Structured triangulation of a square box: n x n congruent squares, each
// split along its lower-left to upper-right diagonal. Cells are oriented
// counterclockwise.
struct BackgroundMesh {
  BBox box;
  int n = 0;       // squares per side
  double h = 0.0;  // mesh size: longest edge (the diagonal)

  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> cells;
  std::vector<Face> faces;
  std::vector<std::array<int, 3>> cell_faces;   // faces opposite local vertex order
  std::vector<std::vector<int>> vertex_cells;   // cells touching each vertex

  std::vector<Vec2> barycenter;
  std::vector<double> diameter;  // per-cell h_K
  std::vector<double> area;
  double quasi_uniformity = 0.0;  // max h_K / min inradius

  int n_cells() const { return static_cast<int>(cells.size()); }
  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_faces() const { return static_cast<int>(faces.size()); }
  std::array<Vec2, 3> cell_vertices(int c) const {
    return {vertices[cells[c][0]], vertices[cells[c][1]],
            vertices[cells[c][2]]};
  }
};

// n >= 2 squares per side. Throws ValidationError on bad n or a degenerate
// box.
BackgroundMesh build_background_mesh(BBox box, int n);

}  // namespace umax
