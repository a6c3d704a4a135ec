#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace umax {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
// z component of the cross product of the embedded 3d vectors
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

struct BBox {
  Vec2 lo{-1.0, -1.0};
  Vec2 hi{1.0, 1.0};
};

// Implicit domain description: eval < 0 inside, = 0 on the boundary,
// > 0 outside. grad must be the analytic gradient of eval.
struct LevelSet {
  std::function<double(Vec2)> eval;
  std::function<Vec2(Vec2)> grad;
  std::string name;
  std::vector<double> params;
};

// Built-in geometries:
//   "circle": params {r} or {cx, cy, r}, default r = 0.7 centered at origin
//   "star":   five-petal flower r(theta) = 1/2 + sin(5 theta)/7, no params
// Throws UnknownGeometry for anything else.
LevelSet builtin_levelset(const std::string& name,
                          const std::vector<double>& params = {});

// Same shape shifted by d; used to sweep cut positions relative to the mesh.
LevelSet translate_levelset(const LevelSet& ls, Vec2 d);

// Unit outward normal grad/|grad|. Throws DegenerateGradient when
// |grad| < 1e-12.
Vec2 boundary_normal(const LevelSet& ls, Vec2 p);

// Zero of the level set on the segment [a, b], found by Newton on the
// segment parameter with a bisection safeguard. Guaranteed when the
// endpoint values differ in sign; otherwise the segment is scanned for an
// interior sign change first and NoSignChange is thrown when there is none.
// The result q satisfies |eval(q)| <= tol * max(|eval(a)|, |eval(b)|).
Vec2 segment_root(const LevelSet& ls, Vec2 a, Vec2 b, double tol = 1e-12);

}  // namespace umax
