#include "umax/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "umax/errors.hpp"

namespace umax {

BackgroundMesh build_background_mesh(BBox box, int n) {
  if (n < 2) throw ValidationError("mesh resolution must be at least 2");
  if (!(box.hi.x > box.lo.x) || !(box.hi.y > box.lo.y))
    throw ValidationError("degenerate bounding box");

  BackgroundMesh m;
  m.box = box;
  m.n = n;
  double sx = (box.hi.x - box.lo.x) / n;
  double sy = (box.hi.y - box.lo.y) / n;

  m.vertices.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      m.vertices.push_back({box.lo.x + i * sx, box.lo.y + j * sy});
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };

  m.cells.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      int sw = vid(i, j), se = vid(i + 1, j);
      int ne = vid(i + 1, j + 1), nw = vid(i, j + 1);
      m.cells.push_back({sw, se, ne});
      m.cells.push_back({sw, ne, nw});
    }
  }

  int nc = m.n_cells();
  m.barycenter.resize(nc);
  m.diameter.resize(nc);
  m.area.resize(nc);
  m.cell_faces.assign(nc, {-1, -1, -1});
  m.vertex_cells.assign(m.vertices.size(), {});

  double max_diam = 0.0, min_inradius = 1e300;
  for (int c = 0; c < nc; ++c) {
    auto [A, B, C] = m.cell_vertices(c);
    m.barycenter[c] = (1.0 / 3.0) * (A + B + C);
    double la = dist(B, C), lb = dist(C, A), lc = dist(A, B);
    m.diameter[c] = std::max({la, lb, lc});
    m.area[c] = 0.5 * std::abs(cross(B - A, C - A));
    double inr = 2.0 * m.area[c] / (la + lb + lc);
    max_diam = std::max(max_diam, m.diameter[c]);
    min_inradius = std::min(min_inradius, inr);
    for (int k = 0; k < 3; ++k) m.vertex_cells[m.cells[c][k]].push_back(c);
  }
  m.h = max_diam;
  m.quasi_uniformity = max_diam / min_inradius;

  std::map<std::pair<int, int>, int> edge_to_face;
  for (int c = 0; c < nc; ++c) {
    for (int k = 0; k < 3; ++k) {
      // face k sits opposite local vertex k
      int a = m.cells[c][(k + 1) % 3];
      int b = m.cells[c][(k + 2) % 3];
      std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      auto it = edge_to_face.find(key);
      if (it == edge_to_face.end()) {
        Face f;
        f.v0 = key.first;
        f.v1 = key.second;
        f.left = c;
        Vec2 pa = m.vertices[f.v0], pb = m.vertices[f.v1];
        f.length = dist(pa, pb);
        f.midpoint = 0.5 * (pa + pb);
        Vec2 t = pb - pa;
        Vec2 nrm{t.y / f.length, -t.x / f.length};
        if (dot(nrm, f.midpoint - m.barycenter[c]) < 0.0) nrm = -nrm;
        f.normal = nrm;
        int id = static_cast<int>(m.faces.size());
        m.faces.push_back(f);
        edge_to_face.emplace(key, id);
        m.cell_faces[c][k] = id;
      } else {
        m.faces[it->second].right = c;
        m.cell_faces[c][k] = it->second;
      }
    }
  }
  return m;
}

}  // namespace umax
