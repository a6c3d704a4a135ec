#include "umax/cases.hpp"

#include <cmath>

#include "umax/errors.hpp"

namespace umax {

ManufacturedCase case_circle(double k) {
  ManufacturedCase c;
  c.name = "circle";
  c.ls = builtin_levelset("circle");
  c.k = k;
  c.u = [](Vec2 p) {
    return Vec2{std::cos(M_PI * p.x) * std::sin(M_PI * p.y),
                -std::sin(M_PI * p.x) * std::cos(M_PI * p.y)};
  };
  c.rot_u = [](Vec2 p) {
    return -2.0 * M_PI * std::cos(M_PI * p.x) * std::cos(M_PI * p.y);
  };
  c.div_u = [](Vec2) { return 0.0; };
  c.p = [](Vec2 p) { return p.x * p.x + p.y * p.y - 0.49; };
  c.grad_p = [](Vec2 p) { return Vec2{2.0 * p.x, 2.0 * p.y}; };
  // curl(rot u) = 2 pi^2 u, so j = (2 pi^2 - k^2) u - grad p
  c.j = [k, u = c.u, gp = c.grad_p](Vec2 p) {
    Vec2 uu = u(p);
    Vec2 g = gp(p);
    double a = 2.0 * M_PI * M_PI - k * k;
    return Vec2{a * uu.x - g.x, a * uu.y - g.y};
  };
  return c;
}

ManufacturedCase case_star(double k) {
  ManufacturedCase c;
  c.name = "star";
  c.ls = builtin_levelset("star");
  c.k = k;
  c.u = [](Vec2 p) {
    double ex = std::exp(p.x);
    return Vec2{-ex * (p.y * std::cos(p.y) + std::sin(p.y)),
                ex * p.y * std::sin(p.y)};
  };
  c.rot_u = [](Vec2 p) { return 2.0 * std::exp(p.x) * std::cos(p.y); };
  c.div_u = [](Vec2) { return 0.0; };
  c.p = [](Vec2) { return 0.0; };
  c.grad_p = [](Vec2) { return Vec2{0.0, 0.0}; };
  // curl(rot u) = (-2 e^x sin y, -2 e^x cos y)
  c.j = [k, u = c.u](Vec2 p) {
    double ex = std::exp(p.x);
    Vec2 uu = u(p);
    return Vec2{-2.0 * ex * std::sin(p.y) - k * k * uu.x,
                -2.0 * ex * std::cos(p.y) - k * k * uu.y};
  };
  return c;
}

ManufacturedCase case_patch(double k) {
  ManufacturedCase c;
  c.name = "patch";
  c.ls = builtin_levelset("circle");
  c.k = k;
  c.u = [](Vec2 p) { return Vec2{p.y, -p.x}; };
  c.rot_u = [](Vec2) { return -2.0; };
  c.div_u = [](Vec2) { return 0.0; };
  c.p = [](Vec2) { return 0.0; };
  c.grad_p = [](Vec2) { return Vec2{0.0, 0.0}; };
  c.j = [k](Vec2 p) { return Vec2{-k * k * p.y, k * k * p.x}; };
  return c;
}

ManufacturedCase manufactured_case(const std::string& name, double k) {
  if (name == "circle") return case_circle(k);
  if (name == "star") return case_star(k);
  if (name == "patch") return case_patch(k);
  throw ValidationError("unknown example '" + name + "'");
}

}  // namespace umax
