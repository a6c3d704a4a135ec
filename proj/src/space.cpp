#include "umax/space.hpp"

#include <cmath>

#include "umax/errors.hpp"

namespace umax {

CellFrame cell_frame(const BackgroundMesh& mesh, int cell) {
  auto [A, B, C] = mesh.cell_vertices(cell);
  CellFrame fr;
  fr.origin = A;
  fr.J[0][0] = B.x - A.x;
  fr.J[1][0] = B.y - A.y;
  fr.J[0][1] = C.x - A.x;
  fr.J[1][1] = C.y - A.y;
  double det = fr.J[0][0] * fr.J[1][1] - fr.J[0][1] * fr.J[1][0];
  fr.det = std::abs(det);
  fr.Jinv[0][0] = fr.J[1][1] / det;
  fr.Jinv[0][1] = -fr.J[0][1] / det;
  fr.Jinv[1][0] = -fr.J[1][0] / det;
  fr.Jinv[1][1] = fr.J[0][0] / det;
  fr.scale = 1.0 / std::sqrt(fr.det);
  return fr;
}

void eval_scalar_basis(const CellFrame& fr, int degree, Vec2 p,
                       BasisEval& out, bool with_grad) {
  out.dim = poly_dim(degree);
  Vec2 r = fr.to_ref(p);
  if (with_grad) {
    Vec2 gref[kMaxModes];
    modal_basis(degree, r, out.val, gref);
    for (int i = 0; i < out.dim; ++i) {
      out.val[i] *= fr.scale;
      // J^{-T} grad_ref, then the orthonormal scaling
      out.grad[i] = {
          fr.scale * (fr.Jinv[0][0] * gref[i].x + fr.Jinv[1][0] * gref[i].y),
          fr.scale * (fr.Jinv[0][1] * gref[i].x + fr.Jinv[1][1] * gref[i].y)};
    }
  } else {
    modal_basis(degree, r, out.val, nullptr);
    for (int i = 0; i < out.dim; ++i) out.val[i] *= fr.scale;
  }
}

FeSpace make_space(const CutClassification& cls, FeSpace::Kind kind,
                   int degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw ValidationError("polynomial degree out of range");
  FeSpace sp;
  sp.kind = kind;
  sp.degree = degree;
  sp.dim_scalar = poly_dim(degree);
  sp.ndof_cell = sp.dim_scalar * sp.ncomp();
  sp.n_dofs = static_cast<long>(sp.ndof_cell) * cls.n_active();
  return sp;
}

double eval_local_scalar(const BackgroundMesh& mesh, const LocalPoly& lp,
                         Vec2 p) {
  CellFrame fr = cell_frame(mesh, lp.cell);
  BasisEval be;
  eval_scalar_basis(fr, lp.degree, p, be, false);
  double s = 0.0;
  for (int i = 0; i < be.dim; ++i) s += lp.coeff[i] * be.val[i];
  return s;
}

Vec2 eval_local_vector(const BackgroundMesh& mesh, const LocalPoly& lp,
                       Vec2 p) {
  CellFrame fr = cell_frame(mesh, lp.cell);
  BasisEval be;
  eval_scalar_basis(fr, lp.degree, p, be, false);
  Vec2 s{0.0, 0.0};
  for (int i = 0; i < be.dim; ++i) {
    s.x += lp.coeff[i] * be.val[i];
    s.y += lp.coeff[be.dim + i] * be.val[i];
  }
  return s;
}

LocalPoly l2_project_scalar(const BackgroundMesh& mesh, int cell, int degree,
                            const std::function<double(Vec2)>& f, int order) {
  auto vs = mesh.cell_vertices(cell);
  QuadRule q = triangle_rule_on(vs[0], vs[1], vs[2],
                                std::max(order, 2 * degree));
  CellFrame fr = cell_frame(mesh, cell);
  LocalPoly lp;
  lp.cell = cell;
  lp.degree = degree;
  lp.kind = FeSpace::Kind::Scalar;
  lp.coeff.assign(poly_dim(degree), 0.0);
  BasisEval be;
  for (int k = 0; k < q.size(); ++k) {
    eval_scalar_basis(fr, degree, q.points[k], be, false);
    double fv = f(q.points[k]) * q.weights[k];
    for (int i = 0; i < be.dim; ++i) lp.coeff[i] += fv * be.val[i];
  }
  return lp;
}

LocalPoly l2_project_vector(const BackgroundMesh& mesh, int cell, int degree,
                            const std::function<Vec2(Vec2)>& f, int order) {
  auto vs = mesh.cell_vertices(cell);
  QuadRule q = triangle_rule_on(vs[0], vs[1], vs[2],
                                std::max(order, 2 * degree));
  CellFrame fr = cell_frame(mesh, cell);
  LocalPoly lp;
  lp.cell = cell;
  lp.degree = degree;
  lp.kind = FeSpace::Kind::Vector;
  int dim = poly_dim(degree);
  lp.coeff.assign(2 * dim, 0.0);
  BasisEval be;
  for (int k = 0; k < q.size(); ++k) {
    eval_scalar_basis(fr, degree, q.points[k], be, false);
    Vec2 fv = q.weights[k] * f(q.points[k]);
    for (int i = 0; i < be.dim; ++i) {
      lp.coeff[i] += fv.x * be.val[i];
      lp.coeff[dim + i] += fv.y * be.val[i];
    }
  }
  return lp;
}

namespace {
LocalPoly partner_poly(const CutClassification& cls, const ExtensionMap& ext,
                       const FeSpace& space, const std::vector<double>& coeffs,
                       int cut_cell) {
  int partner = ext.neighbor_of[cut_cell];
  if (partner < 0)
    throw DimensionMismatch("cell has no extension partner");
  long off = space.cell_offset(cls.active_index[partner]);
  LocalPoly lp;
  lp.cell = partner;
  lp.degree = space.degree;
  lp.kind = space.kind;
  lp.coeff.assign(coeffs.begin() + off, coeffs.begin() + off + space.ndof_cell);
  return lp;
}
}  // namespace

double extend_scalar(const BackgroundMesh& mesh,
                     const CutClassification& cls, const ExtensionMap& ext,
                     const FeSpace& space, const std::vector<double>& coeffs,
                     int cut_cell, Vec2 p) {
  return eval_local_scalar(mesh,
                           partner_poly(cls, ext, space, coeffs, cut_cell), p);
}

Vec2 extend_vector(const BackgroundMesh& mesh, const CutClassification& cls,
                   const ExtensionMap& ext, const FeSpace& space,
                   const std::vector<double>& coeffs, int cut_cell, Vec2 p) {
  return eval_local_vector(mesh,
                           partner_poly(cls, ext, space, coeffs, cut_cell), p);
}

}  // namespace umax
