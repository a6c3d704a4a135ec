#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "umax/classify.hpp"
#include "umax/errors.hpp"
#include "umax/mesh.hpp"

using namespace umax;

TEST_CASE("mesh counts and structure") {
  BackgroundMesh m = build_background_mesh({}, 6);
  CHECK(m.n_cells() == 72);
  CHECK(m.n_vertices() == 49);
  CHECK(m.h == doctest::Approx(std::sqrt(2.0) / 3.0));

  BackgroundMesh m2 = build_background_mesh({{0, 0}, {1, 1}}, 2);
  CHECK(m2.n_cells() == 8);
  CHECK(m2.n_vertices() == 9);

  CHECK(build_background_mesh({}, 48).n_cells() == 4608);
  CHECK_THROWS_AS(build_background_mesh({}, 1), ValidationError);
}

TEST_CASE("cells are counterclockwise with consistent area") {
  BackgroundMesh m = build_background_mesh({}, 4);
  double total = 0.0;
  for (int c = 0; c < m.n_cells(); ++c) {
    auto [A, B, C] = m.cell_vertices(c);
    CHECK(cross(B - A, C - A) > 0.0);
    total += m.area[c];
  }
  CHECK(total == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(m.quasi_uniformity > 0.0);
}

TEST_CASE("face conformity and orientation") {
  BackgroundMesh m = build_background_mesh({}, 4);
  int boundary = 0, interior = 0;
  for (const Face& f : m.faces) {
    CHECK(f.v0 < f.v1);
    CHECK(f.length > 0.0);
    CHECK(norm(f.normal) == doctest::Approx(1.0).epsilon(1e-14));
    if (f.on_boundary()) {
      ++boundary;
    } else {
      ++interior;
      // normal points from left into right
      CHECK(dot(f.normal, m.barycenter[f.right] - m.barycenter[f.left]) >
            0.0);
    }
    CHECK(dot(f.normal, f.midpoint - m.barycenter[f.left]) > 0.0);
  }
  // Euler: E = 3 squares + diagonal per square + boundary edges
  CHECK(boundary == 4 * m.n);
  // every cell has 3 faces and each interior face is shared by exactly two
  std::vector<int> uses(m.n_faces(), 0);
  for (int c = 0; c < m.n_cells(); ++c)
    for (int k = 0; k < 3; ++k) {
      int f = m.cell_faces[c][k];
      REQUIRE(f >= 0);
      ++uses[f];
    }
  for (int f = 0; f < m.n_faces(); ++f)
    CHECK(uses[f] == (m.faces[f].on_boundary() ? 1 : 2));
}

TEST_CASE("classification against a dense sampling oracle") {
  BackgroundMesh m = build_background_mesh({}, 6);
  LevelSet c = builtin_levelset("circle");
  CutClassification cls = classify(m, c);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int cell = 0; cell < m.n_cells(); ++cell) {
    auto [A, B, C] = m.cell_vertices(cell);
    bool any_in = false, any_out = false;
    for (int s = 0; s < 10000; ++s) {
      double a = U(rng), b = U(rng);
      if (a + b > 1.0) {
        a = 1.0 - a;
        b = 1.0 - b;
      }
      Vec2 p = A + a * (B - A) + b * (C - A);
      (c.eval(p) < 0.0 ? any_in : any_out) = true;
      if (any_in && any_out) break;
    }
    CellLabel want = any_in && any_out
                         ? CellLabel::Cut
                         : (any_in ? CellLabel::Interior : CellLabel::Exterior);
    CHECK(cls.label[cell] == want);
  }
}

TEST_CASE("classification partitions and face sets are consistent") {
  BackgroundMesh m = build_background_mesh({}, 8);
  LevelSet c = builtin_levelset("circle");
  CutClassification cls = classify(m, c);

  CHECK(static_cast<int>(cls.interior_cells.size() + cls.cut_cells.size()) ==
        cls.n_active());
  CHECK(!cls.interior_cells.empty());
  CHECK(!cls.cut_cells.empty());
  for (int c2 : cls.active_cells)
    CHECK(cls.active_index[c2] >= 0);

  // the faces between active cells split into interior-interior and the
  // rest, exhaustively
  int between_interior = 0, cut_region = 0;
  for (int f : cls.interior_faces) {
    const Face& fc = m.faces[f];
    REQUIRE(!fc.on_boundary());
    CHECK(cls.active(fc.left));
    CHECK(cls.active(fc.right));
    bool li = cls.label[fc.left] == CellLabel::Interior;
    bool ri = cls.label[fc.right] == CellLabel::Interior;
    if (li && ri) {
      CHECK(cls.face_cat[f] == FaceCategory::BetweenInterior);
      ++between_interior;
    } else {
      CHECK(cls.face_cat[f] == FaceCategory::CutRegion);
      ++cut_region;
    }
  }
  CHECK(between_interior + cut_region ==
        static_cast<int>(cls.interior_faces.size()));
  CHECK(cut_region > 0);
}

TEST_CASE("whole box inside leaves no cut cells") {
  BackgroundMesh m = build_background_mesh({}, 4);
  LevelSet all;
  all.name = "halfspace";
  all.eval = [](Vec2) { return -1.0; };
  all.grad = [](Vec2) { return Vec2{0.0, 0.0}; };
  CutClassification cls = classify(m, all);
  CHECK(static_cast<int>(cls.interior_cells.size()) == m.n_cells());
  CHECK(cls.cut_cells.empty());
}

TEST_CASE("face crossing the boundary twice is recorded") {
  // a thin slab centered inside one cell row: faces spanning y in [0, 0.5]
  // cross both slab boundaries y = 0.2 and y = 0.3
  LevelSet slab;
  slab.name = "slab";
  slab.eval = [](Vec2 p) { return std::abs(p.y - 0.25) - 0.05; };
  slab.grad = [](Vec2 p) {
    return Vec2{0.0, p.y >= 0.25 ? 1.0 : -1.0};
  };
  BackgroundMesh m = build_background_mesh({}, 4);
  CutClassification cls = classify(m, slab);
  CHECK(!cls.multi_crossed_faces.empty());
  CHECK_THROWS_AS(require_single_crossings(cls), AssumptionViolated);

  // a clean circle records nothing
  CutClassification ok = classify(m, builtin_levelset("circle"));
  CHECK(ok.multi_crossed_faces.empty());
  require_single_crossings(ok);
}

TEST_CASE("cut cells store their edge crossings") {
  BackgroundMesh m = build_background_mesh({}, 8);
  LevelSet c = builtin_levelset("circle");
  CutClassification cls = classify(m, c);
  REQUIRE(cls.edge_crossings.size() == cls.cut_cells.size());
  int with_roots = 0;
  for (size_t i = 0; i < cls.cut_cells.size(); ++i) {
    for (const Vec2& q : cls.edge_crossings[i])
      CHECK(std::abs(c.eval(q)) <= 1e-10);
    if (!cls.edge_crossings[i].empty()) ++with_roots;
  }
  CHECK(with_roots > 0);
}

TEST_CASE("extension map picks nearest interior cells deterministically") {
  BackgroundMesh m = build_background_mesh({}, 8);
  LevelSet c = builtin_levelset("circle");
  CutClassification cls = classify(m, c);
  ExtensionMap ext = assign_interior_neighbors(cls, m);
  ExtensionMap ext2 = assign_interior_neighbors(cls, m);
  CHECK(ext.neighbor_of == ext2.neighbor_of);

  for (size_t i = 0; i < cls.cut_cells.size(); ++i) {
    int K = cls.cut_cells[i];
    int P = ext.neighbor_of[K];
    REQUIRE(P >= 0);
    CHECK(cls.label[P] == CellLabel::Interior);
    CHECK(ext.hops[i] >= 1);
    if (ext.hops[i] == 1) {
      // partner shares a vertex with the cut cell
      bool shares = false;
      for (int a : m.cells[K])
        for (int b : m.cells[P])
          if (a == b) shares = true;
      CHECK(shares);
    }
  }
  CHECK(ext.c_delta > 0.0);
  CHECK(ext.c_delta < 6.0);

  // reverse adjacency is exactly the inverse relation
  for (int cell = 0; cell < m.n_cells(); ++cell)
    for (int K : ext.extended_to[cell]) CHECK(ext.neighbor_of[K] == cell);
}

TEST_CASE("no interior cell anywhere throws") {
  // a disk much smaller than the cells: every active cell is cut
  LevelSet c = builtin_levelset("circle", {0.3});
  BackgroundMesh m = build_background_mesh({}, 2);
  CutClassification cls = classify(m, c);
  CHECK(cls.interior_cells.empty());
  CHECK(!cls.cut_cells.empty());
  CHECK_THROWS_AS(assign_interior_neighbors(cls, m), NoInteriorElement);
}
