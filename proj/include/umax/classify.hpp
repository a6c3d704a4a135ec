#pragma once

#include <vector>

#include "umax/geometry.hpp"
#include "umax/mesh.hpp"

namespace umax {

enum class CellLabel { Interior, Cut, Exterior };
enum class FaceCategory { None, InteriorOfActive, BetweenInterior, CutRegion };

// Partition of the background mesh relative to the level set. Active cells
// (Interior or Cut) carry the discrete spaces; everything downstream indexes
// them through active_index.
struct CutClassification {
  std::vector<CellLabel> label;          // per cell
  std::vector<int> active_index;        // per cell, -1 when Exterior
  std::vector<int> active_cells;        // background ids, ascending
  std::vector<int> interior_cells;
  std::vector<int> cut_cells;
  std::vector<FaceCategory> face_cat;   // per face
  std::vector<int> interior_faces;      // faces with two active neighbors
  // boundary crossings of cut cell edges, indexed like cut_cells
  std::vector<std::vector<Vec2>> edge_crossings;
  // active faces where the sampling saw the boundary cross more than once;
  // the trace estimates behind the error analysis assume this is empty, but
  // the quadrature integrates every piece, so it is reported rather than
  // fatal. Concave necks of the star domain populate this on coarse meshes.
  std::vector<int> multi_crossed_faces;

  bool active(int cell) const { return label[cell] != CellLabel::Exterior; }
  bool cut(int cell) const { return label[cell] == CellLabel::Cut; }
  int n_active() const { return static_cast<int>(active_cells.size()); }
};

// Labels every cell by sign sampling on a barycentric lattice with
// samples_per_edge points per edge. A cell is Exterior when no sample is
// strictly inside (tolerance 1e-12 h), Interior when all samples are, and
// Cut otherwise, so a boundary grazing a vertex or edge from outside never
// creates an active cell with a measure-zero intersection. Faces of active
// cells crossing the boundary more than once are recorded in
// multi_crossed_faces.
CutClassification classify(const BackgroundMesh& mesh, const LevelSet& ls,
                           int samples_per_edge = 10);

// Throws AssumptionViolated naming the first offender when the
// classification recorded any multiply-crossed face.
void require_single_crossings(const CutClassification& cls);

// Interior neighbor assignment for the polynomial extension: each cut cell
// K gets the nearest interior cell K*, searched over rings of
// vertex-touching active neighbors (ties: smallest barycenter distance,
// then lowest id).
struct ExtensionMap {
  std::vector<int> neighbor_of;   // per cell, interior partner; -1 if unused
  std::vector<int> hops;          // ring count per cut cell (parallel to cut_cells)
  int n_fallback = 0;             // assignments that needed more than one ring
  double c_delta = 0.0;           // max dist(x_K, x_K*) / h_K realized
  // cut cells extending FROM each interior cell (reverse adjacency)
  std::vector<std::vector<int>> extended_to;
};

ExtensionMap assign_interior_neighbors(const CutClassification& cls,
                                       const BackgroundMesh& mesh);

}  // namespace umax
