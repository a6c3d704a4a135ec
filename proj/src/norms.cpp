#include "umax/norms.hpp"

#include <cmath>

namespace umax {

Eigen::VectorXd interpolate_vector(const BackgroundMesh& mesh,
                                   const CutClassification& cls,
                                   const FeSpace& V,
                                   const std::function<Vec2(Vec2)>& f,
                                   int order) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(V.n_dofs);
  for (int cell : cls.active_cells) {
    LocalPoly lp = l2_project_vector(mesh, cell, V.degree, f, order);
    long base = V.cell_offset(cls.active_index[cell]);
    for (size_t i = 0; i < lp.coeff.size(); ++i) x[base + i] = lp.coeff[i];
  }
  return x;
}

Eigen::VectorXd interpolate_scalar(const BackgroundMesh& mesh,
                                   const CutClassification& cls,
                                   const FeSpace& Q,
                                   const std::function<double(Vec2)>& f,
                                   int order) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(Q.n_dofs);
  for (int cell : cls.active_cells) {
    LocalPoly lp = l2_project_scalar(mesh, cell, Q.degree, f, order);
    long base = Q.cell_offset(cls.active_index[cell]);
    for (size_t i = 0; i < lp.coeff.size(); ++i) x[base + i] = lp.coeff[i];
  }
  return x;
}

namespace {

// discrete field quantities at one point of one cell
struct FieldAt {
  Vec2 val;
  double rot;
  double dive;  // div(eps v)
};

FieldAt field_at(const BasisEval& be, const double* coeff, int dim,
                 double eps, Vec2 geps) {
  FieldAt f{{0.0, 0.0}, 0.0, 0.0};
  for (int i = 0; i < dim; ++i) {
    double cx = coeff[i], cy = coeff[dim + i];
    f.val.x += cx * be.val[i];
    f.val.y += cy * be.val[i];
    f.rot += cy * be.grad[i].x - cx * be.grad[i].y;
    f.dive += eps * (cx * be.grad[i].x + cy * be.grad[i].y) +
              geps.x * cx * be.val[i] + geps.y * cy * be.val[i];
  }
  return f;
}

double scalar_at(const BasisEval& be, const double* coeff, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += coeff[i] * be.val[i];
  return s;
}

double rot_at(const BasisEval& be, const double* coeff, int dim) {
  double r = 0.0;
  for (int i = 0; i < dim; ++i)
    r += coeff[dim + i] * be.grad[i].x - coeff[i] * be.grad[i].y;
  return r;
}

}  // namespace

ErrorReport compute_errors(const AssemblyContext& c,
                           const ManufacturedCase& mc,
                           const Eigen::VectorXd& u,
                           const Eigen::VectorXd& p) {
  ErrorReport er;
  const FeSpace& V = c.V;
  const FeSpace& Q = c.Q;
  const int dv = V.dim_scalar, dq = Q.dim_scalar;
  BasisEval be, beR, qe, qeR;

  auto ucoef = [&](int cell) { return u.data() + V.cell_offset(c.cls.active_index[cell]); };
  auto pcoef = [&](int cell) { return p.data() + Q.cell_offset(c.cls.active_index[cell]); };

  for (int cell : c.cls.active_cells) {
    int ai = c.cls.active_index[cell];
    const QuadRule& q = c.geom.cell_inside[ai];
    if (q.empty()) continue;
    CellFrame fr = cell_frame(c.mesh, cell);
    for (int k = 0; k < q.size(); ++k) {
      Vec2 x = q.points[k];
      double w = q.weights[k];
      double eps = c.coef.eps(x);
      Vec2 geps = c.coef.grad_eps(x);
      eval_scalar_basis(fr, V.degree, x, be, true);
      FieldAt fh = field_at(be, ucoef(cell), dv, eps, geps);
      Vec2 ue = mc.u(x);
      double rot_e = fh.rot - mc.rot_u(x);
      double dive_e =
          fh.dive - (eps * mc.div_u(x) + geps.x * ue.x + geps.y * ue.y);
      er.vol_l2 += w * (dist(fh.val, ue) * dist(fh.val, ue));
      er.vol_rot += w * rot_e * rot_e;
      er.vol_div += w * dive_e * dive_e;
      eval_scalar_basis(fr, Q.degree, x, qe, false);
      double pe = scalar_at(qe, pcoef(cell), dq) - mc.p(x);
      er.p_l2 += w * pe * pe;
    }
  }

  for (int f : c.cls.interior_faces) {
    const QuadRule& q = c.geom.face_inside[f];
    if (q.empty()) continue;
    const Face& fc = c.mesh.faces[f];
    double hf = fc.length;
    CellFrame frL = cell_frame(c.mesh, fc.left);
    CellFrame frR = cell_frame(c.mesh, fc.right);
    const double* uL = ucoef(fc.left);
    const double* uR = ucoef(fc.right);
    const double* pL = pcoef(fc.left);
    const double* pR = pcoef(fc.right);
    for (int k = 0; k < q.size(); ++k) {
      Vec2 x = q.points[k];
      double w = q.weights[k];
      double eps = c.coef.eps(x);
      Vec2 geps = c.coef.grad_eps(x);
      Vec2 n = fc.normal;
      eval_scalar_basis(frL, V.degree, x, be, true);
      eval_scalar_basis(frR, V.degree, x, beR, true);
      FieldAt fL = field_at(be, uL, dv, eps, geps);
      FieldAt fR = field_at(beR, uR, dv, eps, geps);
      double tj = (n.x * fL.val.y - n.y * fL.val.x) -
                  (n.x * fR.val.y - n.y * fR.val.x);
      double nj = eps * (n.x * (fL.val.x - fR.val.x) +
                         n.y * (fL.val.y - fR.val.y));
      double ravg = 0.5 * (fL.rot + fR.rot) - mc.rot_u(x);
      er.face_tjump += w / hf * tj * tj;
      er.face_njump += w / hf * nj * nj;
      er.face_avg += w * hf * ravg * ravg;
      eval_scalar_basis(frL, Q.degree, x, qe, false);
      eval_scalar_basis(frR, Q.degree, x, qeR, false);
      double pLv = scalar_at(qe, pL, dq), pRv = scalar_at(qeR, pR, dq);
      double pj = pLv - pRv;
      double pavg = 0.5 * (pLv + pRv) - mc.p(x);
      er.p_jump += w * hf * pj * pj;
      er.p_avg += w * hf * pavg * pavg;
    }
  }

  for (int cell : c.cls.cut_cells) {
    int ai = c.cls.active_index[cell];
    const QuadRule& q = c.geom.surface[ai];
    double hk = c.mesh.diameter[cell];
    CellFrame fr = cell_frame(c.mesh, cell);
    for (int k = 0; k < q.size(); ++k) {
      Vec2 x = q.points[k];
      double w = q.weights[k];
      Vec2 n = q.normals[k];
      double eps = c.coef.eps(x);
      Vec2 geps = c.coef.grad_eps(x);
      eval_scalar_basis(fr, V.degree, x, be, true);
      FieldAt fh = field_at(be, ucoef(cell), dv, eps, geps);
      double te = (n.x * fh.val.y - n.y * fh.val.x) - mc.g(x, n);
      double re = fh.rot - mc.rot_u(x);
      er.gamma_tang += w / hk * te * te;
      er.gamma_avg += w * hk * re * re;
      eval_scalar_basis(fr, Q.degree, x, qe, false);
      double pe = scalar_at(qe, pcoef(cell), dq) - mc.p(x);
      er.p_gamma += w * hk * pe * pe;
    }

    // extension penalties: the exact field would enter both sides of the
    // difference with the same values, so only the discrete mismatch is left
    const QuadRule& qf = c.geom.cell_full[ai];
    int partner = c.ext.neighbor_of[cell];
    CellFrame frN = cell_frame(c.mesh, partner);
    const double* uN = ucoef(partner);
    const double* pN = pcoef(partner);
    const double* uK = ucoef(cell);
    const double* pK = pcoef(cell);
    for (int k = 0; k < qf.size(); ++k) {
      Vec2 x = qf.points[k];
      double w = qf.weights[k];
      eval_scalar_basis(fr, V.degree, x, be, true);
      eval_scalar_basis(frN, V.degree, x, beR, true);
      double d = rot_at(be, uK, dv) - rot_at(beR, uN, dv);
      er.gpen += w * d * d;
      eval_scalar_basis(fr, Q.degree, x, qe, false);
      eval_scalar_basis(frN, Q.degree, x, qeR, false);
      double dj = scalar_at(qe, pK, dq) - scalar_at(qeR, pN, dq);
      er.jpen += w * dj * dj;
    }
  }

  double k2 = c.coef.k * c.coef.k;
  er.l2_u = std::sqrt(er.vol_l2);
  er.anorm_u = std::sqrt(k2 * er.vol_l2 + er.vol_rot + er.vol_div +
                         er.face_tjump + er.face_njump + er.gamma_tang +
                         er.gpen + er.face_avg + er.gamma_avg);
  er.cnorm_p = std::sqrt(er.p_l2 + er.p_jump + er.p_gamma + er.jpen + er.p_avg);
  return er;
}

}  // namespace umax
