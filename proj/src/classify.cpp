#include "umax/classify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "umax/errors.hpp"

namespace umax {

CutClassification classify(const BackgroundMesh& mesh, const LevelSet& ls,
                           int samples_per_edge) {
  if (samples_per_edge < 2)
    throw ValidationError("need at least 2 samples per edge");
  const double tol = 1e-12 * mesh.h;
  const int S = samples_per_edge;

  CutClassification cls;
  int nc = mesh.n_cells();
  cls.label.resize(nc);
  cls.active_index.assign(nc, -1);

  for (int c = 0; c < nc; ++c) {
    auto [A, B, C] = mesh.cell_vertices(c);
    // strict_in: sample strictly inside; touched: sample on or outside the
    // boundary. A cell is active only if part of it lies strictly inside;
    // a boundary that merely grazes a vertex or edge from outside leaves the
    // intersection at measure zero and such a cell must stay Exterior, or it
    // would carry dofs no form can see. A zero sample on an otherwise
    // interior cell demotes it to Cut so the grazing point gets boundary
    // quadrature.
    bool strict_in = false, touched = false;
    for (int i = 0; i <= S && !(strict_in && touched); ++i) {
      for (int j = 0; j <= S - i; ++j) {
        int k = S - i - j;
        Vec2 p = (1.0 / S) * (i * A + j * B + k * C);
        double v = ls.eval(p);
        if (v < -tol)
          strict_in = true;
        else
          touched = true;
        if (strict_in && touched) break;
      }
    }
    if (!strict_in)
      cls.label[c] = CellLabel::Exterior;
    else if (touched)
      cls.label[c] = CellLabel::Cut;
    else
      cls.label[c] = CellLabel::Interior;
  }

  for (int c = 0; c < nc; ++c) {
    if (cls.label[c] == CellLabel::Exterior) continue;
    cls.active_index[c] = static_cast<int>(cls.active_cells.size());
    cls.active_cells.push_back(c);
    if (cls.label[c] == CellLabel::Interior)
      cls.interior_cells.push_back(c);
    else
      cls.cut_cells.push_back(c);
  }

  // Face categories. The analysis assumes faces of active cells cross the
  // boundary at most once; offenders are recorded, not fatal, since the
  // face quadrature integrates each inside piece separately.
  cls.face_cat.assign(mesh.n_faces(), FaceCategory::None);
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& fc = mesh.faces[f];
    bool la = cls.active(fc.left);
    bool ra = !fc.on_boundary() && cls.active(fc.right);
    if (!(la || ra)) continue;

    Vec2 a = mesh.vertices[fc.v0], b = mesh.vertices[fc.v1];
    int crossings = 0;
    int prev = 0;  // -1 inside, +1 outside, 0 unset
    for (int i = 0; i <= S; ++i) {
      double t = static_cast<double>(i) / S;
      double v = ls.eval(a + t * (b - a));
      int sgn = v > tol ? 1 : -1;
      if (prev != 0 && sgn != prev) ++crossings;
      prev = sgn;
    }
    if (crossings > 1) cls.multi_crossed_faces.push_back(f);

    if (la && ra) {
      cls.interior_faces.push_back(f);
      bool li = cls.label[fc.left] == CellLabel::Interior;
      bool ri = cls.label[fc.right] == CellLabel::Interior;
      cls.face_cat[f] = (li && ri) ? FaceCategory::BetweenInterior
                                   : FaceCategory::CutRegion;
    } else {
      cls.face_cat[f] = FaceCategory::InteriorOfActive;
    }
  }

  // Edge crossing points of cut cells, one root per sign-changing edge.
  cls.edge_crossings.resize(cls.cut_cells.size());
  for (size_t ci = 0; ci < cls.cut_cells.size(); ++ci) {
    auto vs = mesh.cell_vertices(cls.cut_cells[ci]);
    for (int e = 0; e < 3; ++e) {
      Vec2 a = vs[e], b = vs[(e + 1) % 3];
      double fa = ls.eval(a), fb = ls.eval(b);
      if (fa * fb < 0.0)
        cls.edge_crossings[ci].push_back(segment_root(ls, a, b));
      else if (fa == 0.0)
        cls.edge_crossings[ci].push_back(a);
    }
  }
  return cls;
}

void require_single_crossings(const CutClassification& cls) {
  if (cls.multi_crossed_faces.empty()) return;
  int f = cls.multi_crossed_faces.front();
  throw AssumptionViolated(
      f, "face " + std::to_string(f) +
             " crosses the boundary more than once; refine the mesh");
}

ExtensionMap assign_interior_neighbors(const CutClassification& cls,
                                       const BackgroundMesh& mesh) {
  if (cls.interior_cells.empty())
    throw NoInteriorElement("no fully interior cell to extend from");

  ExtensionMap ext;
  ext.neighbor_of.assign(mesh.n_cells(), -1);
  ext.hops.assign(cls.cut_cells.size(), 0);
  ext.extended_to.assign(mesh.n_cells(), {});

  std::vector<int> ring_of(mesh.n_cells(), -1);
  std::vector<int> frontier, next;
  for (size_t ci = 0; ci < cls.cut_cells.size(); ++ci) {
    int K = cls.cut_cells[ci];
    // breadth-first rings over vertex-touching active cells
    std::vector<int> touched;
    frontier.assign(1, K);
    ring_of[K] = 0;
    touched.push_back(K);
    int best = -1, hops = 0;
    double best_d = 0.0;
    for (int ring = 1; ring <= mesh.n_cells() && best < 0; ++ring) {
      next.clear();
      for (int c : frontier) {
        for (int k = 0; k < 3; ++k) {
          for (int nb : mesh.vertex_cells[mesh.cells[c][k]]) {
            if (ring_of[nb] >= 0 || !cls.active(nb)) continue;
            ring_of[nb] = ring;
            touched.push_back(nb);
            next.push_back(nb);
          }
        }
      }
      if (next.empty()) break;
      std::sort(next.begin(), next.end());
      for (int nb : next) {
        if (cls.label[nb] != CellLabel::Interior) continue;
        double d = dist(mesh.barycenter[K], mesh.barycenter[nb]);
        if (best < 0 || d < best_d - 1e-14 * mesh.h) {
          best = nb;
          best_d = d;
        }
      }
      if (best >= 0) hops = ring;
      frontier.swap(next);
    }
    for (int c : touched) ring_of[c] = -1;
    if (best < 0)
      throw NoInteriorElement("cut cell has no reachable interior cell");

    ext.neighbor_of[K] = best;
    ext.hops[ci] = hops;
    if (hops > 1) ++ext.n_fallback;
    ext.extended_to[best].push_back(K);
    double cd = dist(mesh.barycenter[K], mesh.barycenter[best]) /
                mesh.diameter[K];
    ext.c_delta = std::max(ext.c_delta, cd);
  }
  return ext;
}

}  // namespace umax
