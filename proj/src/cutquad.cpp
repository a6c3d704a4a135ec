#include "umax/cutquad.hpp"

#include <algorithm>
#include <cmath>

#include "umax/errors.hpp"

namespace umax {

namespace {

// strict sign with ties counting as inside
inline int sgn(double v) { return v > 0.0 ? 1 : -1; }

struct Probe {
  bool mixed = false;  // samples on both sides of the boundary
  int side = 0;        // -1 / +1 when all samples agree
};

// Samples vertices, edge midpoints and the centroid.
Probe probe_triangle(const std::array<Vec2, 3>& t, const LevelSet& ls) {
  Vec2 samples[7] = {t[0],
                     t[1],
                     t[2],
                     0.5 * (t[0] + t[1]),
                     0.5 * (t[1] + t[2]),
                     0.5 * (t[2] + t[0]),
                     (1.0 / 3.0) * (t[0] + t[1] + t[2])};
  Probe p;
  int first = 0;
  for (int i = 0; i < 7; ++i) {
    int s = sgn(ls.eval(samples[i]));
    if (i == 0) {
      first = s;
    } else if (s != first) {
      p.mixed = true;
      return p;
    }
  }
  p.side = first;
  return p;
}

struct DeepTri {
  std::array<Vec2, 3> t;
};

// Refinement walk shared by the volume and surface rules: collects inside
// sub-triangles and the crossed ones left at the deepest level whose vertex
// signs disagree (those admit the edge-root decomposition). One-sided
// sampling terminates a branch wholesale. The subdivision lattice is the
// geometric resolution: a feature the deepest level's samples cannot
// separate from an edge is assigned to the side its vertices see, rather
// than half-resolved by some rules and missed by others.
void refine(const std::array<Vec2, 3>& t, const LevelSet& ls, int depth,
            std::vector<DeepTri>& inside, std::vector<DeepTri>& cut) {
  Probe p = probe_triangle(t, ls);
  if (!p.mixed) {
    if (p.side < 0) inside.push_back({t});
    return;
  }
  if (depth > 0) {
    Vec2 m01 = 0.5 * (t[0] + t[1]);
    Vec2 m12 = 0.5 * (t[1] + t[2]);
    Vec2 m20 = 0.5 * (t[2] + t[0]);
    refine({t[0], m01, m20}, ls, depth - 1, inside, cut);
    refine({m01, t[1], m12}, ls, depth - 1, inside, cut);
    refine({m20, m12, t[2]}, ls, depth - 1, inside, cut);
    refine({m01, m12, m20}, ls, depth - 1, inside, cut);
    return;
  }
  int s0 = sgn(ls.eval(t[0]));
  bool vertex_mixed = s0 != sgn(ls.eval(t[1])) || s0 != sgn(ls.eval(t[2]));
  if (vertex_mixed) {
    cut.push_back({t});
    return;
  }
  if (s0 < 0) inside.push_back({t});
}

struct CutCorners {
  // vertices inside / outside by strict sign, and the edge roots bounding
  // the inside region
  std::vector<int> in, out;
  Vec2 qa, qb;  // qa on an edge of in.front(), qb closing the arc
  bool degenerate = false;
};

// Locate the two boundary crossings of a deepest-level cut triangle.
CutCorners cut_corners(const std::array<Vec2, 3>& t, const LevelSet& ls) {
  CutCorners cc;
  double f[3] = {ls.eval(t[0]), ls.eval(t[1]), ls.eval(t[2])};
  for (int i = 0; i < 3; ++i)
    (sgn(f[i]) < 0 ? cc.in : cc.out).push_back(i);
  if (cc.in.empty() || cc.out.empty()) {
    cc.degenerate = true;
    return cc;
  }
  auto root = [&](int i, int j) {
    if (f[i] == 0.0) return t[i];
    if (f[j] == 0.0) return t[j];
    return segment_root(ls, t[i], t[j]);
  };
  if (cc.in.size() == 1) {
    int v = cc.in[0];
    cc.qa = root(v, cc.out[0]);
    cc.qb = root(v, cc.out[1]);
  } else {
    // two inside vertices, one outside
    int w = cc.out[0];
    cc.qa = root(cc.in[0], w);
    cc.qb = root(cc.in[1], w);
  }
  return cc;
}

void append_triangle(QuadRule& rule, Vec2 A, Vec2 B, Vec2 C, int order,
                     double min_area) {
  if (!(0.5 * std::abs(cross(B - A, C - A)) > min_area)) return;
  rule.append(triangle_rule_on(A, B, C, order));
}

// Integrate over the region swept between apex P and the boundary arc
// lifted from the chord q0 -> q1: Y(s, tau) = P + tau (gamma(s) - P).
// Falls back to the straight chord triangle if the arc geometry is not a
// proper fan around P (mixed Jacobian signs).
void append_curved_fan(QuadRule& rule, const LevelSet& ls, Vec2 P, Vec2 q0,
                       Vec2 q1, int order, double step_limit) {
  double chord = dist(q0, q1);
  if (chord < 1e-14 * std::max(1.0, step_limit)) return;

  int ns = std::max(2, (order + 3) / 2 + 1);
  int nt = std::max(1, (order + 3) / 2);
  std::vector<double> xs, ws, xt, wt;
  gauss_legendre(ns, xs, ws);
  gauss_legendre(nt, xt, wt);

  std::vector<LiftedPoint> arc(ns);
  bool ok = true;
  for (int i = 0; i < ns; ++i) {
    arc[i] = lift_chord_point(ls, q0, q1, 0.5 * (xs[i] + 1.0), step_limit);
    if (std::abs(cross(arc[i].dxds, arc[i].x - P)) < 1e-16) ok = false;
  }
  int orient = 0;
  for (int i = 0; i < ns && ok; ++i) {
    int s = cross(arc[i].dxds, arc[i].x - P) > 0.0 ? 1 : -1;
    if (orient == 0)
      orient = s;
    else if (s != orient)
      ok = false;
  }
  if (!ok) {
    // straight replacement keeps positivity at the price of dropping the
    // sliver between chord and arc
    append_triangle(rule, P, q0, q1, order, 0.0);
    return;
  }
  for (int i = 0; i < ns; ++i) {
    double base = std::abs(cross(arc[i].dxds, arc[i].x - P));
    for (int j = 0; j < nt; ++j) {
      double tau = 0.5 * (xt[j] + 1.0);
      rule.points.push_back(P + tau * (arc[i].x - P));
      rule.weights.push_back(0.25 * ws[i] * wt[j] * tau * base);
    }
  }
}

}  // namespace

LiftedPoint lift_chord_point(const LevelSet& ls, Vec2 q0, Vec2 q1, double s,
                             double step_limit) {
  Vec2 delta = q1 - q0;
  Vec2 c = q0 + s * delta;
  Vec2 d = boundary_normal(ls, c);

  double t = 0.0;
  bool converged = false;
  for (int it = 0; it < 50; ++it) {
    Vec2 x = c + t * d;
    double f = ls.eval(x);
    if (std::abs(f) <= 1e-10) {
      converged = true;
      break;
    }
    double slope = dot(ls.grad(x), d);
    if (slope == 0.0) break;
    double tn = t - f / slope;
    if (std::abs(tn) > 2.0 * std::max(step_limit, norm(delta)))
      tn = std::copysign(2.0 * std::max(step_limit, norm(delta)), tn);
    t = tn;
  }
  LiftedPoint lp;
  lp.x = c + t * d;
  if (!converged && std::abs(ls.eval(lp.x)) > 1e-10)
    throw ProjectionFailed("boundary lift did not converge");

  // chord-parameter derivative of the lifted point; the direction field is
  // differentiated by central differences of the analytic gradient
  double ds = 1e-4;
  Vec2 dp = boundary_normal(ls, q0 + (s + ds) * delta);
  Vec2 dm = boundary_normal(ls, q0 + (s - ds) * delta);
  Vec2 dprime = (0.5 / ds) * (dp - dm);
  Vec2 g = ls.grad(lp.x);
  double denom = dot(g, d);
  double tprime =
      (denom != 0.0) ? -dot(g, delta + t * dprime) / denom : 0.0;
  lp.dxds = delta + tprime * d + t * dprime;
  lp.normal = (1.0 / norm(g)) * g;
  return lp;
}

QuadRule cut_volume_on_triangle(const std::array<Vec2, 3>& tri,
                                const LevelSet& ls, int order, int depth) {
  std::vector<DeepTri> inside, cut;
  refine(tri, ls, depth, inside, cut);

  QuadRule rule;
  for (const auto& dt : inside) rule.append(
      triangle_rule_on(dt.t[0], dt.t[1], dt.t[2], order));

  double diam = std::max({dist(tri[0], tri[1]), dist(tri[1], tri[2]),
                          dist(tri[2], tri[0])});
  double min_area = 1e-28 * diam * diam;
  for (const auto& dt : cut) {
    CutCorners cc = cut_corners(dt.t, ls);
    if (cc.degenerate) {
      // vertex signs agree although midpoint or centroid samples differ;
      // the protruding piece is below the resolution of the refinement, so
      // keep or drop the whole sub-triangle by the vertex sign
      if (cc.out.empty())
        rule.append(triangle_rule_on(dt.t[0], dt.t[1], dt.t[2], order));
      continue;
    }
    if (cc.in.size() == 1) {
      append_curved_fan(rule, ls, dt.t[cc.in[0]], cc.qa, cc.qb, order, diam);
    } else {
      // straight part, then the fan from the inside vertex farther off the
      // chord so the fan rays stay inside the region
      Vec2 v0 = dt.t[cc.in[0]], v1 = dt.t[cc.in[1]];
      Vec2 cdir = cc.qb - cc.qa;
      double len = norm(cdir);
      double d0 = len > 0 ? std::abs(cross(cdir, v0 - cc.qa)) / len
                          : dist(v0, cc.qa);
      double d1 = len > 0 ? std::abs(cross(cdir, v1 - cc.qa)) / len
                          : dist(v1, cc.qa);
      if (d0 >= d1) {
        append_triangle(rule, v0, v1, cc.qb, order, min_area);
        append_curved_fan(rule, ls, v0, cc.qb, cc.qa, order, diam);
      } else {
        append_triangle(rule, v1, v0, cc.qa, order, min_area);
        append_curved_fan(rule, ls, v1, cc.qa, cc.qb, order, diam);
      }
    }
  }
  return rule;
}

QuadRule surface_on_triangle(const std::array<Vec2, 3>& tri,
                             const LevelSet& ls, int order, int depth) {
  std::vector<DeepTri> inside, cut;
  refine(tri, ls, depth, inside, cut);

  double diam = std::max({dist(tri[0], tri[1]), dist(tri[1], tri[2]),
                          dist(tri[2], tri[0])});
  int ns = std::max(2, (order + 3) / 2 + 1);
  std::vector<double> xs, ws;
  gauss_legendre(ns, xs, ws);

  QuadRule rule;
  for (const auto& dt : cut) {
    CutCorners cc = cut_corners(dt.t, ls);
    if (cc.degenerate) continue;
    if (dist(cc.qa, cc.qb) < 1e-14 * diam) continue;
    for (int i = 0; i < ns; ++i) {
      LiftedPoint lp =
          lift_chord_point(ls, cc.qa, cc.qb, 0.5 * (xs[i] + 1.0), diam);
      rule.points.push_back(lp.x);
      rule.weights.push_back(0.5 * ws[i] * norm(lp.dxds));
      rule.normals.push_back(lp.normal);
    }
  }
  return rule;
}

QuadRule cut_face_on_segment(Vec2 a, Vec2 b, const LevelSet& ls, int order) {
  // locate sign changes along the segment, then integrate each inside piece
  constexpr int kScan = 32;
  double val[kScan + 1];
  for (int i = 0; i <= kScan; ++i)
    val[i] = ls.eval(a + (static_cast<double>(i) / kScan) * (b - a));

  std::vector<double> breaks{0.0};
  for (int i = 0; i < kScan; ++i) {
    if (sgn(val[i]) != sgn(val[i + 1])) {
      Vec2 lo = a + (static_cast<double>(i) / kScan) * (b - a);
      Vec2 hi = a + (static_cast<double>(i + 1) / kScan) * (b - a);
      Vec2 q = segment_root(ls, lo, hi);
      double t = (dist(a, b) > 0.0) ? dist(a, q) / dist(a, b) : 0.0;
      breaks.push_back(t);
    }
  }
  breaks.push_back(1.0);

  QuadRule rule;
  for (size_t k = 0; k + 1 < breaks.size(); ++k) {
    double t0 = breaks[k], t1 = breaks[k + 1];
    if (t1 - t0 < 1e-14) continue;
    Vec2 mid = a + (0.5 * (t0 + t1)) * (b - a);
    if (sgn(ls.eval(mid)) > 0) continue;
    rule.append(segment_rule(a + t0 * (b - a), a + t1 * (b - a), order));
  }
  return rule;
}

QuadRule cut_volume_quadrature(const BackgroundMesh& mesh, int cell,
                               const LevelSet& ls, int order, int depth) {
  return cut_volume_on_triangle(mesh.cell_vertices(cell), ls, order, depth);
}

QuadRule surface_quadrature(const BackgroundMesh& mesh, int cell,
                            const LevelSet& ls, int order, int depth) {
  return surface_on_triangle(mesh.cell_vertices(cell), ls, order, depth);
}

QuadRule cut_face_quadrature(const BackgroundMesh& mesh, int face,
                             const LevelSet& ls, int order) {
  const Face& f = mesh.faces[face];
  return cut_face_on_segment(mesh.vertices[f.v0], mesh.vertices[f.v1], ls,
                             order);
}

CutGeometry build_cut_geometry(const BackgroundMesh& mesh,
                               const CutClassification& cls,
                               const LevelSet& ls, int order, int depth) {
  CutGeometry g;
  g.order = order;
  g.depth = depth;
  int na = cls.n_active();
  g.cell_inside.resize(na);
  g.cell_full.resize(na);
  g.surface.resize(na);
  for (int c : cls.active_cells) {
    int ai = cls.active_index[c];
    auto vs = mesh.cell_vertices(c);
    if (cls.cut(c)) {
      g.cell_inside[ai] = cut_volume_on_triangle(vs, ls, order, depth);
      g.cell_full[ai] = triangle_rule_on(vs[0], vs[1], vs[2], order);
      g.surface[ai] = surface_on_triangle(vs, ls, order, depth);
    } else {
      g.cell_inside[ai] = triangle_rule_on(vs[0], vs[1], vs[2], order);
    }
  }
  g.face_inside.resize(mesh.n_faces());
  g.face_full.resize(mesh.n_faces());
  for (int f : cls.interior_faces) {
    const Face& fc = mesh.faces[f];
    Vec2 a = mesh.vertices[fc.v0], b = mesh.vertices[fc.v1];
    bool cut_side = cls.cut(fc.left) || cls.cut(fc.right);
    if (cut_side) {
      g.face_inside[f] = cut_face_on_segment(a, b, ls, order);
      g.face_full[f] = segment_rule(a, b, order);
    } else {
      g.face_inside[f] = segment_rule(a, b, order);
      g.face_full[f] = g.face_inside[f];
    }
  }
  return g;
}

}  // namespace umax
