#pragma once

#include <functional>
#include <string>

#include "umax/geometry.hpp"

namespace umax {

// A manufactured time-harmonic field on one of the catalog domains, with
// everything the solver and the error norms need in closed form. The source
// is j = curl(rot u) - k^2 u - grad p for unit material coefficients, and
// the boundary datum is the tangential trace g(x, n) = n x u.
struct ManufacturedCase {
  std::string name;
  LevelSet ls;
  double k = 1.0;
  std::function<Vec2(Vec2)> u;
  std::function<double(Vec2)> rot_u;
  std::function<double(Vec2)> div_u;
  std::function<double(Vec2)> p;
  std::function<Vec2(Vec2)> grad_p;
  std::function<Vec2(Vec2)> j;

  double g(Vec2 x, Vec2 n) const {
    Vec2 v = u(x);
    return n.x * v.y - n.y * v.x;
  }
};

// Trigonometric divergence-free field on the disk of radius 0.7; the
// multiplier equals the level set, so it vanishes on the boundary.
ManufacturedCase case_circle(double k = 1.0);

// Exponential divergence-free field on the five-petal star; the multiplier
// is identically zero.
ManufacturedCase case_star(double k = 1.0);

// Linear field u = (y, -x), p = 0 on the disk; any degree r >= 1
// reproduces it exactly.
ManufacturedCase case_patch(double k = 1.0);

// Catalog lookup by name ("circle", "star", "patch").
ManufacturedCase manufactured_case(const std::string& name, double k = 1.0);

}  // namespace umax
