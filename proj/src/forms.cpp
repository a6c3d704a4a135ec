#include "umax/forms.hpp"

#include <cmath>
#include <vector>

#include "umax/errors.hpp"

namespace umax {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void scatter(Triplets& out, const Eigen::MatrixXd& blk,
             const std::vector<long>& rows, const std::vector<long>& cols) {
  for (int i = 0; i < blk.rows(); ++i)
    for (int j = 0; j < blk.cols(); ++j)
      if (blk(i, j) != 0.0)
        out.emplace_back(rows[i], cols[j], blk(i, j));
}

std::vector<long> cell_dofs(const CutClassification& cls, const FeSpace& sp,
                            int cell) {
  long base = sp.cell_offset(cls.active_index[cell]);
  std::vector<long> idx(sp.ndof_cell);
  for (int i = 0; i < sp.ndof_cell; ++i) idx[i] = base + i;
  return idx;
}

SpMat from_triplets(long rows, long cols, Triplets& t) {
  SpMat m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

// Vector-dof traces at one point: dof i pairs component i / dim with scalar
// mode i % dim.
struct VecTraces {
  int ndof = 0, dim = 0;
  const BasisEval* be = nullptr;

  double vx(int i) const { return i < dim ? be->val[i] : 0.0; }
  double vy(int i) const { return i < dim ? 0.0 : be->val[i - dim]; }
  double curl(int i) const {
    return i < dim ? -be->grad[i].y : be->grad[i - dim].x;
  }
  double div(int i) const {
    return i < dim ? be->grad[i].x : be->grad[i - dim].y;
  }
  double tang(int i, Vec2 n) const {
    return i < dim ? -n.y * be->val[i] : n.x * be->val[i - dim];
  }
  // div(eps v) and n.(eps v) with the material value and gradient at the point
  double dive(int i, double eps, Vec2 geps) const {
    return i < dim ? eps * be->grad[i].x + geps.x * be->val[i]
                   : eps * be->grad[i - dim].y + geps.y * be->val[i - dim];
  }
  double neps(int i, double eps, Vec2 n) const {
    return eps * (i < dim ? n.x * be->val[i] : n.y * be->val[i - dim]);
  }
};

}  // namespace

SpMat assemble_a0(const AssemblyContext& c) {
  Triplets trip;
  const FeSpace& V = c.V;
  BasisEval be, beR;

  // volume: mu^{-1} rot rot + div(eps .) div(eps .)
  for (int cell : c.cls.active_cells) {
    int ai = c.cls.active_index[cell];
    const QuadRule& q = c.geom.cell_inside[ai];
    if (q.empty()) continue;
    CellFrame fr = cell_frame(c.mesh, cell);
    auto dofs = cell_dofs(c.cls, V, cell);
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(V.ndof_cell, V.ndof_cell);
    VecTraces tr{V.ndof_cell, V.dim_scalar, &be};
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(fr, V.degree, q.points[k], be, true);
      double w = q.weights[k];
      double mi = 1.0 / c.coef.mu(q.points[k]);
      double eps = c.coef.eps(q.points[k]);
      Vec2 geps = c.coef.grad_eps(q.points[k]);
      for (int i = 0; i < V.ndof_cell; ++i) {
        double ci = tr.curl(i), di = tr.dive(i, eps, geps);
        for (int j = 0; j < V.ndof_cell; ++j)
          blk(i, j) += w * (mi * ci * tr.curl(j) + di * tr.dive(j, eps, geps));
      }
    }
    scatter(trip, blk, dofs, dofs);
  }

  // faces: -({mu^{-1} rot u}[n x v] + {mu^{-1} rot v}[n x u]) over the
  // inside parts
  for (int f : c.cls.interior_faces) {
    const QuadRule& q = c.geom.face_inside[f];
    if (q.empty()) continue;
    const Face& fc = c.mesh.faces[f];
    CellFrame frL = cell_frame(c.mesh, fc.left);
    CellFrame frR = cell_frame(c.mesh, fc.right);
    auto dofsL = cell_dofs(c.cls, V, fc.left);
    auto dofsR = cell_dofs(c.cls, V, fc.right);
    int nd = V.ndof_cell;
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(2 * nd, 2 * nd);
    VecTraces trL{nd, V.dim_scalar, &be}, trR{nd, V.dim_scalar, &beR};
    std::vector<double> jump(2 * nd), avgc(2 * nd);
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(frL, V.degree, q.points[k], be, true);
      eval_scalar_basis(frR, V.degree, q.points[k], beR, true);
      double w = q.weights[k];
      double mi = 1.0 / c.coef.mu(q.points[k]);
      for (int i = 0; i < nd; ++i) {
        jump[i] = trL.tang(i, fc.normal);
        jump[nd + i] = -trR.tang(i, fc.normal);
        avgc[i] = 0.5 * mi * trL.curl(i);
        avgc[nd + i] = 0.5 * mi * trR.curl(i);
      }
      for (int i = 0; i < 2 * nd; ++i)
        for (int j = 0; j < 2 * nd; ++j)
          blk(i, j) -= w * (avgc[j] * jump[i] + avgc[i] * jump[j]);
    }
    std::vector<long> dofs(dofsL);
    dofs.insert(dofs.end(), dofsR.begin(), dofsR.end());
    scatter(trip, blk, dofs, dofs);
  }

  // boundary: single-sided traces on each cut cell
  for (int cell : c.cls.cut_cells) {
    int ai = c.cls.active_index[cell];
    const QuadRule& q = c.geom.surface[ai];
    if (q.empty()) continue;
    CellFrame fr = cell_frame(c.mesh, cell);
    auto dofs = cell_dofs(c.cls, V, cell);
    int nd = V.ndof_cell;
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(nd, nd);
    VecTraces tr{nd, V.dim_scalar, &be};
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(fr, V.degree, q.points[k], be, true);
      double w = q.weights[k];
      double mi = 1.0 / c.coef.mu(q.points[k]);
      Vec2 n = q.normals[k];
      for (int i = 0; i < nd; ++i) {
        double ti = tr.tang(i, n), ci = mi * tr.curl(i);
        for (int j = 0; j < nd; ++j)
          blk(i, j) -= w * (ci * tr.tang(j, n) + mi * tr.curl(j) * ti);
      }
    }
    scatter(trip, blk, dofs, dofs);
  }
  return from_triplets(c.V.n_dofs, c.V.n_dofs, trip);
}

SpMat assemble_a1(const AssemblyContext& c) {
  Triplets trip;
  const FeSpace& V = c.V;
  BasisEval be, beR;
  double alpha = c.coef.alpha;
  double fsc = std::getenv("UMAX_FSCALE") ? std::atof(std::getenv("UMAX_FSCALE")) : 1.0;
  double gsc = std::getenv("UMAX_GSCALE") ? std::atof(std::getenv("UMAX_GSCALE")) : 1.0;

  for (int f : c.cls.interior_faces) {
    const QuadRule& q = c.geom.face_inside[f];
    if (q.empty()) continue;
    const Face& fc = c.mesh.faces[f];
    double hf = fc.length;
    CellFrame frL = cell_frame(c.mesh, fc.left);
    CellFrame frR = cell_frame(c.mesh, fc.right);
    int nd = V.ndof_cell;
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(2 * nd, 2 * nd);
    VecTraces trL{nd, V.dim_scalar, &be}, trR{nd, V.dim_scalar, &beR};
    std::vector<double> tj(2 * nd), nj(2 * nd);
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(frL, V.degree, q.points[k], be, false);
      eval_scalar_basis(frR, V.degree, q.points[k], beR, false);
      double w = q.weights[k];
      double eps = c.coef.eps(q.points[k]);
      for (int i = 0; i < nd; ++i) {
        tj[i] = trL.tang(i, fc.normal);
        tj[nd + i] = -trR.tang(i, fc.normal);
        nj[i] = trL.neps(i, eps, fc.normal);
        nj[nd + i] = -trR.neps(i, eps, fc.normal);
      }
      for (int i = 0; i < 2 * nd; ++i)
        for (int j = 0; j < 2 * nd; ++j)
          blk(i, j) += w * fsc * (alpha / hf * tj[i] * tj[j] +
                                  1.0 / hf * nj[i] * nj[j]);
    }
    auto dofsL = cell_dofs(c.cls, V, fc.left);
    auto dofsR = cell_dofs(c.cls, V, fc.right);
    std::vector<long> dofs(dofsL);
    dofs.insert(dofs.end(), dofsR.begin(), dofsR.end());
    scatter(trip, blk, dofs, dofs);
  }

  for (int cell : c.cls.cut_cells) {
    int ai = c.cls.active_index[cell];
    const QuadRule& q = c.geom.surface[ai];
    if (q.empty()) continue;
    double hk = c.mesh.diameter[cell];
    CellFrame fr = cell_frame(c.mesh, cell);
    auto dofs = cell_dofs(c.cls, V, cell);
    int nd = V.ndof_cell;
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(nd, nd);
    VecTraces tr{nd, V.dim_scalar, &be};
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(fr, V.degree, q.points[k], be, false);
      double w = q.weights[k] * gsc * alpha / hk;
      Vec2 n = q.normals[k];
      for (int i = 0; i < nd; ++i) {
        double ti = tr.tang(i, n);
        for (int j = 0; j < nd; ++j) blk(i, j) += w * ti * tr.tang(j, n);
      }
    }
    scatter(trip, blk, dofs, dofs);
  }
  return from_triplets(c.V.n_dofs, c.V.n_dofs, trip);
}

SpMat assemble_b(const AssemblyContext& c) {
  Triplets trip;
  const FeSpace& V = c.V;
  const FeSpace& Q = c.Q;
  BasisEval be, beR, qe, qeR;

  // volume: div(eps v) q
  for (int cell : c.cls.active_cells) {
    int ai = c.cls.active_index[cell];
    const QuadRule& q = c.geom.cell_inside[ai];
    if (q.empty()) continue;
    CellFrame fr = cell_frame(c.mesh, cell);
    auto vdofs = cell_dofs(c.cls, V, cell);
    auto qdofs = cell_dofs(c.cls, Q, cell);
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(Q.ndof_cell, V.ndof_cell);
    VecTraces tr{V.ndof_cell, V.dim_scalar, &be};
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(fr, V.degree, q.points[k], be, true);
      eval_scalar_basis(fr, Q.degree, q.points[k], qe, false);
      double w = q.weights[k];
      double eps = c.coef.eps(q.points[k]);
      Vec2 geps = c.coef.grad_eps(q.points[k]);
      for (int i = 0; i < Q.ndof_cell; ++i)
        for (int j = 0; j < V.ndof_cell; ++j)
          blk(i, j) += w * qe.val[i] * tr.dive(j, eps, geps);
    }
    scatter(trip, blk, qdofs, vdofs);
  }

  // faces: -[n.(eps v)]{q}
  for (int f : c.cls.interior_faces) {
    const QuadRule& q = c.geom.face_inside[f];
    if (q.empty()) continue;
    const Face& fc = c.mesh.faces[f];
    CellFrame frL = cell_frame(c.mesh, fc.left);
    CellFrame frR = cell_frame(c.mesh, fc.right);
    int nv = V.ndof_cell, nq = Q.ndof_cell;
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(2 * nq, 2 * nv);
    VecTraces trL{nv, V.dim_scalar, &be}, trR{nv, V.dim_scalar, &beR};
    std::vector<double> nj(2 * nv), qa(2 * nq);
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(frL, V.degree, q.points[k], be, false);
      eval_scalar_basis(frR, V.degree, q.points[k], beR, false);
      eval_scalar_basis(frL, Q.degree, q.points[k], qe, false);
      eval_scalar_basis(frR, Q.degree, q.points[k], qeR, false);
      double w = q.weights[k];
      double eps = c.coef.eps(q.points[k]);
      for (int j = 0; j < nv; ++j) {
        nj[j] = trL.neps(j, eps, fc.normal);
        nj[nv + j] = -trR.neps(j, eps, fc.normal);
      }
      for (int i = 0; i < nq; ++i) {
        qa[i] = 0.5 * qe.val[i];
        qa[nq + i] = 0.5 * qeR.val[i];
      }
      for (int i = 0; i < 2 * nq; ++i)
        for (int j = 0; j < 2 * nv; ++j) blk(i, j) -= w * nj[j] * qa[i];
    }
    auto vL = cell_dofs(c.cls, V, fc.left), vR = cell_dofs(c.cls, V, fc.right);
    auto qL = cell_dofs(c.cls, Q, fc.left), qR = cell_dofs(c.cls, Q, fc.right);
    std::vector<long> vdofs(vL);
    vdofs.insert(vdofs.end(), vR.begin(), vR.end());
    std::vector<long> qdofs(qL);
    qdofs.insert(qdofs.end(), qR.begin(), qR.end());
    scatter(trip, blk, qdofs, vdofs);
  }
  return from_triplets(c.Q.n_dofs, c.V.n_dofs, trip);
}

SpMat assemble_c_faces(const AssemblyContext& c, bool on_cut_part) {
  Triplets trip;
  const FeSpace& Q = c.Q;
  BasisEval qe, qeR;
  for (int f : c.cls.interior_faces) {
    const QuadRule& q =
        on_cut_part ? c.geom.face_inside[f] : c.geom.face_full[f];
    if (q.empty()) continue;
    const Face& fc = c.mesh.faces[f];
    double hf = fc.length;
    CellFrame frL = cell_frame(c.mesh, fc.left);
    CellFrame frR = cell_frame(c.mesh, fc.right);
    int nq = Q.ndof_cell;
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(2 * nq, 2 * nq);
    std::vector<double> jq(2 * nq);
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(frL, Q.degree, q.points[k], qe, false);
      eval_scalar_basis(frR, Q.degree, q.points[k], qeR, false);
      double w = q.weights[k] * hf;
      for (int i = 0; i < nq; ++i) {
        jq[i] = qe.val[i];
        jq[nq + i] = -qeR.val[i];
      }
      for (int i = 0; i < 2 * nq; ++i)
        for (int j = 0; j < 2 * nq; ++j) blk(i, j) += w * jq[i] * jq[j];
    }
    auto qL = cell_dofs(c.cls, Q, fc.left), qR = cell_dofs(c.cls, Q, fc.right);
    std::vector<long> qdofs(qL);
    qdofs.insert(qdofs.end(), qR.begin(), qR.end());
    scatter(trip, blk, qdofs, qdofs);
  }
  return from_triplets(c.Q.n_dofs, c.Q.n_dofs, trip);
}

SpMat assemble_c_gamma(const AssemblyContext& c) {
  Triplets trip;
  const FeSpace& Q = c.Q;
  BasisEval qe;
  for (int cell : c.cls.cut_cells) {
    int ai = c.cls.active_index[cell];
    const QuadRule& q = c.geom.surface[ai];
    if (q.empty()) continue;
    double hk = c.mesh.diameter[cell];
    CellFrame fr = cell_frame(c.mesh, cell);
    auto dofs = cell_dofs(c.cls, Q, cell);
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(Q.ndof_cell, Q.ndof_cell);
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(fr, Q.degree, q.points[k], qe, false);
      double w = q.weights[k] * hk;
      for (int i = 0; i < Q.ndof_cell; ++i)
        for (int j = 0; j < Q.ndof_cell; ++j)
          blk(i, j) += w * qe.val[i] * qe.val[j];
    }
    scatter(trip, blk, dofs, dofs);
  }
  return from_triplets(c.Q.n_dofs, c.Q.n_dofs, trip);
}

SpMat assemble_c(const AssemblyContext& c, bool on_cut_part) {
  return assemble_c_faces(c, on_cut_part) + assemble_c_gamma(c);
}

namespace {

// shared by J (values) and G (curls): sum over full cut cells of the
// difference between the cell's own polynomial and its interior partner's
SpMat assemble_extension_penalty(const AssemblyContext& c, const FeSpace& sp,
                                 bool use_curl) {
  Triplets trip;
  BasisEval beK, beN;
  for (int cell : c.cls.cut_cells) {
    int ai = c.cls.active_index[cell];
    const QuadRule& q = c.geom.cell_full[ai];
    if (q.empty()) continue;
    int partner = c.ext.neighbor_of[cell];
    CellFrame frK = cell_frame(c.mesh, cell);
    CellFrame frN = cell_frame(c.mesh, partner);
    int nd = sp.ndof_cell;
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(2 * nd, 2 * nd);
    VecTraces trK{nd, sp.dim_scalar, &beK}, trN{nd, sp.dim_scalar, &beN};
    std::vector<double> d(2 * nd);
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(frK, sp.degree, q.points[k], beK, use_curl);
      eval_scalar_basis(frN, sp.degree, q.points[k], beN, use_curl);
      double w = q.weights[k];
      if (use_curl) {
        for (int i = 0; i < nd; ++i) {
          d[i] = trK.curl(i);
          d[nd + i] = -trN.curl(i);
        }
      } else {
        for (int i = 0; i < nd; ++i) {
          d[i] = beK.val[i];
          d[nd + i] = -beN.val[i];
        }
      }
      for (int i = 0; i < 2 * nd; ++i)
        for (int j = 0; j < 2 * nd; ++j) blk(i, j) += w * d[i] * d[j];
    }
    auto dK = cell_dofs(c.cls, sp, cell), dN = cell_dofs(c.cls, sp, partner);
    std::vector<long> dofs(dK);
    dofs.insert(dofs.end(), dN.begin(), dN.end());
    scatter(trip, blk, dofs, dofs);
  }
  return from_triplets(sp.n_dofs, sp.n_dofs, trip);
}

}  // namespace

SpMat assemble_j(const AssemblyContext& c) {
  return assemble_extension_penalty(c, c.Q, false);
}

SpMat assemble_g(const AssemblyContext& c) {
  return assemble_extension_penalty(c, c.V, true);
}

SpMat assemble_mass(const AssemblyContext& c) {
  Triplets trip;
  const FeSpace& V = c.V;
  BasisEval be;
  for (int cell : c.cls.active_cells) {
    int ai = c.cls.active_index[cell];
    const QuadRule& q = c.geom.cell_inside[ai];
    if (q.empty()) continue;
    CellFrame fr = cell_frame(c.mesh, cell);
    auto dofs = cell_dofs(c.cls, V, cell);
    int s = V.dim_scalar;
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(V.ndof_cell, V.ndof_cell);
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(fr, V.degree, q.points[k], be, false);
      double w = q.weights[k];
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
          double v = w * be.val[i] * be.val[j];
          blk(i, j) += v;
          blk(s + i, s + j) += v;
        }
    }
    scatter(trip, blk, dofs, dofs);
  }
  return from_triplets(V.n_dofs, V.n_dofs, trip);
}

Eigen::VectorXd assemble_rhs(const AssemblyContext& c,
                             const std::function<Vec2(Vec2)>& jsrc,
                             const std::function<double(Vec2, Vec2)>& g) {
  const FeSpace& V = c.V;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(V.n_dofs);
  BasisEval be;
  for (int cell : c.cls.active_cells) {
    int ai = c.cls.active_index[cell];
    const QuadRule& q = c.geom.cell_inside[ai];
    if (q.empty()) continue;
    CellFrame fr = cell_frame(c.mesh, cell);
    long base = V.cell_offset(ai);
    int s = V.dim_scalar;
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(fr, V.degree, q.points[k], be, false);
      Vec2 jv = q.weights[k] * jsrc(q.points[k]);
      for (int i = 0; i < s; ++i) {
        rhs[base + i] += jv.x * be.val[i];
        rhs[base + s + i] += jv.y * be.val[i];
      }
    }
  }
  for (int cell : c.cls.cut_cells) {
    int ai = c.cls.active_index[cell];
    const QuadRule& q = c.geom.surface[ai];
    if (q.empty()) continue;
    double hk = c.mesh.diameter[cell];
    CellFrame fr = cell_frame(c.mesh, cell);
    long base = V.cell_offset(ai);
    int nd = V.ndof_cell;
    VecTraces tr{nd, V.dim_scalar, &be};
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(fr, V.degree, q.points[k], be, true);
      Vec2 n = q.normals[k];
      double w = q.weights[k];
      double gv = g(q.points[k], n);
      double mi = 1.0 / c.coef.mu(q.points[k]);
      double gsc = std::getenv("UMAX_GSCALE") ? std::atof(std::getenv("UMAX_GSCALE")) : 1.0;
      for (int i = 0; i < nd; ++i)
        rhs[base + i] += w * gv * (-mi * tr.curl(i) +
                                   gsc * c.coef.alpha / hk * tr.tang(i, n));
    }
  }
  return rhs;
}

SpMat SaddleSystem::field_block() const {
  return A0 + A1 + G - k * k * M;
}

SpMat SaddleSystem::full() const {
  SpMat K(nu + np, nu + np);
  SpMat F = field_block();
  SpMat CJ = C + J;
  Triplets trip;
  trip.reserve(F.nonZeros() + 2 * B.nonZeros() + CJ.nonZeros());
  for (int k = 0; k < F.outerSize(); ++k)
    for (SpMat::InnerIterator it(F, k); it; ++it)
      trip.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < B.outerSize(); ++k)
    for (SpMat::InnerIterator it(B, k); it; ++it) {
      trip.emplace_back(nu + it.row(), it.col(), it.value());
      trip.emplace_back(it.col(), nu + it.row(), it.value());
    }
  for (int k = 0; k < CJ.outerSize(); ++k)
    for (SpMat::InnerIterator it(CJ, k); it; ++it)
      trip.emplace_back(nu + it.row(), nu + it.col(), -it.value());
  K.setFromTriplets(trip.begin(), trip.end());
  return K;
}

SaddleSystem assemble_system(const AssemblyContext& c,
                             const std::function<Vec2(Vec2)>& j,
                             const std::function<double(Vec2, Vec2)>& g,
                             bool c_on_cut_part) {
  SaddleSystem s;
  s.A0 = assemble_a0(c);
  s.A1 = assemble_a1(c);
  s.G = assemble_g(c);
  s.M = assemble_mass(c);
  s.B = assemble_b(c);
  s.C = assemble_c(c, c_on_cut_part);
  s.J = assemble_j(c);
  s.l = assemble_rhs(c, j, g);
  s.nu = c.V.n_dofs;
  s.np = c.Q.n_dofs;
  s.k = c.coef.k;
  return s;
}

namespace {

// generic symmetric trace-squared assembly used by the norm grams
enum class TraceKind { Tang, NormalEps, Curl, Value };

SpMat face_jump_gram(const AssemblyContext& c, const FeSpace& sp,
                     TraceKind kind, bool average, double hpow) {
  Triplets trip;
  BasisEval be, beR;
  bool needs_grad = kind == TraceKind::Curl;
  for (int f : c.cls.interior_faces) {
    const QuadRule& q = c.geom.face_inside[f];
    if (q.empty()) continue;
    const Face& fc = c.mesh.faces[f];
    double hw = std::pow(fc.length, hpow);
    CellFrame frL = cell_frame(c.mesh, fc.left);
    CellFrame frR = cell_frame(c.mesh, fc.right);
    int nd = sp.ndof_cell;
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(2 * nd, 2 * nd);
    VecTraces trL{nd, sp.dim_scalar, &be}, trR{nd, sp.dim_scalar, &beR};
    std::vector<double> tv(2 * nd);
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(frL, sp.degree, q.points[k], be, needs_grad);
      eval_scalar_basis(frR, sp.degree, q.points[k], beR, needs_grad);
      double w = q.weights[k] * hw;
      double eps = c.coef.eps(q.points[k]);
      double sR = average ? 0.5 : -1.0;
      double sL = average ? 0.5 : 1.0;
      for (int i = 0; i < nd; ++i) {
        switch (kind) {
          case TraceKind::Tang:
            tv[i] = sL * trL.tang(i, fc.normal);
            tv[nd + i] = sR * trR.tang(i, fc.normal);
            break;
          case TraceKind::NormalEps:
            tv[i] = sL * trL.neps(i, eps, fc.normal);
            tv[nd + i] = sR * trR.neps(i, eps, fc.normal);
            break;
          case TraceKind::Curl:
            tv[i] = sL * trL.curl(i);
            tv[nd + i] = sR * trR.curl(i);
            break;
          case TraceKind::Value:
            tv[i] = sL * be.val[i];
            tv[nd + i] = sR * beR.val[i];
            break;
        }
      }
      for (int i = 0; i < 2 * nd; ++i)
        for (int j = 0; j < 2 * nd; ++j) blk(i, j) += w * tv[i] * tv[j];
    }
    auto dL = cell_dofs(c.cls, sp, fc.left), dR = cell_dofs(c.cls, sp, fc.right);
    std::vector<long> dofs(dL);
    dofs.insert(dofs.end(), dR.begin(), dR.end());
    scatter(trip, blk, dofs, dofs);
  }
  return from_triplets(sp.n_dofs, sp.n_dofs, trip);
}

SpMat gamma_gram(const AssemblyContext& c, const FeSpace& sp, TraceKind kind,
                 double hpow) {
  Triplets trip;
  BasisEval be;
  bool needs_grad = kind == TraceKind::Curl;
  for (int cell : c.cls.cut_cells) {
    int ai = c.cls.active_index[cell];
    const QuadRule& q = c.geom.surface[ai];
    if (q.empty()) continue;
    double hw = std::pow(c.mesh.diameter[cell], hpow);
    CellFrame fr = cell_frame(c.mesh, cell);
    auto dofs = cell_dofs(c.cls, sp, cell);
    int nd = sp.ndof_cell;
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(nd, nd);
    VecTraces tr{nd, sp.dim_scalar, &be};
    std::vector<double> tv(nd);
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(fr, sp.degree, q.points[k], be, needs_grad);
      double w = q.weights[k] * hw;
      double eps = c.coef.eps(q.points[k]);
      Vec2 n = q.normals[k];
      for (int i = 0; i < nd; ++i) {
        switch (kind) {
          case TraceKind::Tang:
            tv[i] = tr.tang(i, n);
            break;
          case TraceKind::NormalEps:
            tv[i] = tr.neps(i, eps, n);
            break;
          case TraceKind::Curl:
            tv[i] = tr.curl(i);
            break;
          case TraceKind::Value:
            tv[i] = be.val[i];
            break;
        }
      }
      for (int i = 0; i < nd; ++i)
        for (int j = 0; j < nd; ++j) blk(i, j) += w * tv[i] * tv[j];
    }
    scatter(trip, blk, dofs, dofs);
  }
  return from_triplets(sp.n_dofs, sp.n_dofs, trip);
}

SpMat volume_gram(const AssemblyContext& c, const FeSpace& sp, TraceKind kind) {
  Triplets trip;
  BasisEval be;
  bool needs_grad = kind == TraceKind::Curl || kind == TraceKind::NormalEps;
  for (int cell : c.cls.active_cells) {
    int ai = c.cls.active_index[cell];
    const QuadRule& q = c.geom.cell_inside[ai];
    if (q.empty()) continue;
    CellFrame fr = cell_frame(c.mesh, cell);
    auto dofs = cell_dofs(c.cls, sp, cell);
    int nd = sp.ndof_cell;
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(nd, nd);
    VecTraces tr{nd, sp.dim_scalar, &be};
    std::vector<double> tv(nd);
    for (int k = 0; k < q.size(); ++k) {
      eval_scalar_basis(fr, sp.degree, q.points[k], be, needs_grad);
      double w = q.weights[k];
      double eps = c.coef.eps(q.points[k]);
      Vec2 geps = c.coef.grad_eps(q.points[k]);
      if (kind == TraceKind::Curl) {
        for (int i = 0; i < nd; ++i) tv[i] = tr.curl(i);
      } else if (kind == TraceKind::NormalEps) {
        // reused as the weighted divergence in volume position
        for (int i = 0; i < nd; ++i) tv[i] = tr.dive(i, eps, geps);
      } else {
        for (int i = 0; i < nd; ++i) tv[i] = be.val[i];
      }
      if (kind == TraceKind::Value && sp.kind == FeSpace::Kind::Vector) {
        int s = sp.dim_scalar;
        for (int i = 0; i < s; ++i)
          for (int j = 0; j < s; ++j) {
            double v = w * be.val[i] * be.val[j];
            blk(i, j) += v;
            blk(s + i, s + j) += v;
          }
      } else {
        for (int i = 0; i < nd; ++i)
          for (int j = 0; j < nd; ++j) blk(i, j) += w * tv[i] * tv[j];
      }
    }
    scatter(trip, blk, dofs, dofs);
  }
  return from_triplets(sp.n_dofs, sp.n_dofs, trip);
}

}  // namespace

NormGrams assemble_norm_grams(const AssemblyContext& c) {
  NormGrams ng;
  ng.rot = volume_gram(c, c.V, TraceKind::Curl);
  ng.div = volume_gram(c, c.V, TraceKind::NormalEps);
  ng.mass = volume_gram(c, c.V, TraceKind::Value);
  ng.tjump_f = face_jump_gram(c, c.V, TraceKind::Tang, false, -1.0);
  ng.njump_f = face_jump_gram(c, c.V, TraceKind::NormalEps, false, -1.0);
  ng.tjump_g = gamma_gram(c, c.V, TraceKind::Tang, -1.0);
  ng.avg_f = face_jump_gram(c, c.V, TraceKind::Curl, true, 1.0);
  ng.avg_g = gamma_gram(c, c.V, TraceKind::Curl, 1.0);
  ng.gpen = assemble_g(c);
  ng.qmass = volume_gram(c, c.Q, TraceKind::Value);
  ng.qjump_f = face_jump_gram(c, c.Q, TraceKind::Value, false, 1.0);
  ng.qjump_g = gamma_gram(c, c.Q, TraceKind::Value, 1.0);
  ng.qavg_f = face_jump_gram(c, c.Q, TraceKind::Value, true, 1.0);
  ng.jpen = assemble_j(c);
  return ng;
}

SpMat NormGrams::a_seminorm() const {
  return rot + div + tjump_f + njump_f + tjump_g;
}
SpMat NormGrams::a_norm(double k) const {
  return SpMat(k * k * mass) + a_seminorm() + gpen;
}
SpMat NormGrams::A_norm(double k) const {
  return a_norm(k) + avg_f + avg_g;
}
SpMat NormGrams::c_seminorm() const { return qjump_f + qjump_g + jpen; }
SpMat NormGrams::c_norm() const { return qmass + c_seminorm(); }
SpMat NormGrams::C_norm() const { return c_norm() + qavg_f; }

}  // namespace umax
