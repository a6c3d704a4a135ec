#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "umax/cases.hpp"
#include "umax/errors.hpp"

using namespace umax;

namespace {

// fourth order central differences
double dfdx(const std::function<double(Vec2)>& f, Vec2 p, double h) {
  return (-f({p.x + 2 * h, p.y}) + 8 * f({p.x + h, p.y}) -
          8 * f({p.x - h, p.y}) + f({p.x - 2 * h, p.y})) /
         (12 * h);
}
double dfdy(const std::function<double(Vec2)>& f, Vec2 p, double h) {
  return (-f({p.x, p.y + 2 * h}) + 8 * f({p.x, p.y + h}) -
          8 * f({p.x, p.y - h}) + f({p.x, p.y - 2 * h})) /
         (12 * h);
}

const double kFd = 1e-3;
const double kTol = 1e-8;

std::vector<Vec2> probe_points(const LevelSet& ls) {
  std::vector<Vec2> pts;
  for (double x = -0.9; x < 0.95; x += 0.17)
    for (double y = -0.9; y < 0.95; y += 0.19)
      if (ls.eval({x, y}) < -0.05) pts.push_back({x, y});
  return pts;
}

void check_strong_form(const ManufacturedCase& c) {
  auto ux = [&](Vec2 p) { return c.u(p).x; };
  auto uy = [&](Vec2 p) { return c.u(p).y; };
  auto pts = probe_points(c.ls);
  CHECK(pts.size() > 10);
  for (Vec2 p : pts) {
    double rot = dfdx(uy, p, kFd) - dfdy(ux, p, kFd);
    CHECK(std::abs(rot - c.rot_u(p)) <= kTol);
    double div = dfdx(ux, p, kFd) + dfdy(uy, p, kFd);
    CHECK(std::abs(div - c.div_u(p)) <= kTol);
    Vec2 gp = {dfdx(c.p, p, kFd), dfdy(c.p, p, kFd)};
    CHECK(std::abs(gp.x - c.grad_p(p).x) <= kTol);
    CHECK(std::abs(gp.y - c.grad_p(p).y) <= kTol);
    // j = curl(rot u) - k^2 u - grad p, curl w = (dw/dy, -dw/dx)
    Vec2 crot = {dfdy(c.rot_u, p, kFd), -dfdx(c.rot_u, p, kFd)};
    Vec2 u = c.u(p);
    Vec2 j = c.j(p);
    CHECK(std::abs(crot.x - c.k * c.k * u.x - c.grad_p(p).x - j.x) <= kTol);
    CHECK(std::abs(crot.y - c.k * c.k * u.y - c.grad_p(p).y - j.y) <= kTol);
  }
}

}  // namespace

TEST_CASE("circle example satisfies its strong form") {
  check_strong_form(case_circle(1.0));
  check_strong_form(case_circle(2.5));
}

TEST_CASE("star example satisfies its strong form") {
  check_strong_form(case_star(1.0));
  check_strong_form(case_star(0.5));
}

TEST_CASE("patch example satisfies its strong form") {
  check_strong_form(case_patch(1.0));
}

TEST_CASE("circle multiplier vanishes on the boundary") {
  auto c = case_circle(1.0);
  for (double t = 0.0; t < 6.28; t += 0.3) {
    Vec2 p = {0.7 * std::cos(t), 0.7 * std::sin(t)};
    CHECK(std::abs(c.p(p)) <= 1e-14);
    CHECK(std::abs(c.ls.eval(p)) <= 1e-14);
  }
}

TEST_CASE("boundary datum is the tangential trace") {
  auto c = case_star(1.0);
  Vec2 p = {0.3, -0.2};
  Vec2 n = {0.6, 0.8};
  Vec2 u = c.u(p);
  CHECK(c.g(p, n) == doctest::Approx(n.x * u.y - n.y * u.x).epsilon(1e-14));
}

TEST_CASE("catalog lookup") {
  CHECK(manufactured_case("circle", 2.0).k == 2.0);
  CHECK(manufactured_case("star", 1.0).name == "star");
  CHECK(manufactured_case("patch", 1.0).name == "patch");
  CHECK_THROWS_AS(manufactured_case("torus", 1.0), ValidationError);
}
