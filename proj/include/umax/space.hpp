#pragma once

#include <functional>
#include <vector>

#include "umax/basis.hpp"
#include "umax/classify.hpp"
#include "umax/mesh.hpp"
#include "umax/quadrature.hpp"

namespace umax {

// Affine map x = origin + J xhat from the reference triangle onto a cell,
// with the pieces needed to push basis values and gradients around.
struct CellFrame {
  Vec2 origin;
  double J[2][2];
  double Jinv[2][2];
  double det;    // |det J| = 2 |K|
  double scale;  // 1/sqrt(|det J|), normalizes the physical basis

  Vec2 to_ref(Vec2 p) const {
    Vec2 d = p - origin;
    return {Jinv[0][0] * d.x + Jinv[0][1] * d.y,
            Jinv[1][0] * d.x + Jinv[1][1] * d.y};
  }
  Vec2 to_phys(Vec2 r) const {
    return {origin.x + J[0][0] * r.x + J[0][1] * r.y,
            origin.y + J[1][0] * r.x + J[1][1] * r.y};
  }
};

CellFrame cell_frame(const BackgroundMesh& mesh, int cell);

// Values (and gradients) of the per-cell orthonormal scalar basis at a
// global point: the reference modes divided by sqrt(|det J|), gradients
// pushed through J^{-T}. The point may lie outside the cell; the polynomial
// extends naturally.
struct BasisEval {
  double val[kMaxModes];
  Vec2 grad[kMaxModes];
  int dim = 0;
};

void eval_scalar_basis(const CellFrame& fr, int degree, Vec2 p,
                       BasisEval& out, bool with_grad);

// Discontinuous space over the active cells: per cell, all scalar modes up
// to degree, replicated per component. Dofs are blocked by active cell,
// component-major inside the block.
struct FeSpace {
  enum class Kind { Scalar, Vector };
  Kind kind = Kind::Scalar;
  int degree = 0;
  int dim_scalar = 0;  // modes per component
  int ndof_cell = 0;
  long n_dofs = 0;

  int ncomp() const { return kind == Kind::Vector ? 2 : 1; }
  long cell_offset(int active_idx) const {
    return static_cast<long>(active_idx) * ndof_cell;
  }
};

FeSpace make_space(const CutClassification& cls, FeSpace::Kind kind,
                   int degree);

// One cell's polynomial, evaluable anywhere in the plane.
struct LocalPoly {
  int cell = -1;
  int degree = 0;
  FeSpace::Kind kind = FeSpace::Kind::Scalar;
  std::vector<double> coeff;  // dim_scalar or 2 * dim_scalar entries
};

double eval_local_scalar(const BackgroundMesh& mesh, const LocalPoly& lp,
                         Vec2 p);
Vec2 eval_local_vector(const BackgroundMesh& mesh, const LocalPoly& lp,
                       Vec2 p);

// L2 projection onto the cell's polynomial space using the full-cell rule
// of the given order; with the orthonormal basis this is a plain quadrature
// inner product per mode.
LocalPoly l2_project_scalar(const BackgroundMesh& mesh, int cell, int degree,
                            const std::function<double(Vec2)>& f, int order);
LocalPoly l2_project_vector(const BackgroundMesh& mesh, int cell, int degree,
                            const std::function<Vec2(Vec2)>& f, int order);

// The extension value at p of the discrete field on cut cell K: its
// interior partner's polynomial evaluated at p.
double extend_scalar(const BackgroundMesh& mesh,
                     const CutClassification& cls, const ExtensionMap& ext,
                     const FeSpace& space, const std::vector<double>& coeffs,
                     int cut_cell, Vec2 p);
Vec2 extend_vector(const BackgroundMesh& mesh, const CutClassification& cls,
                   const ExtensionMap& ext, const FeSpace& space,
                   const std::vector<double>& coeffs, int cut_cell, Vec2 p);

}  // namespace umax
