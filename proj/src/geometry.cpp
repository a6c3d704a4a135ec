#include "umax/geometry.hpp"

#include <algorithm>
#include <limits>

#include "umax/errors.hpp"

namespace umax {

namespace {
// star petal amplitude
constexpr double kStarAmp = 1.0 / 7.0;
}  // namespace

LevelSet builtin_levelset(const std::string& name,
                          const std::vector<double>& params) {
  if (name == "circle") {
    double cx = 0.0, cy = 0.0, r = 0.7;
    if (params.size() == 1) {
      r = params[0];
    } else if (params.size() == 3) {
      cx = params[0];
      cy = params[1];
      r = params[2];
    } else if (!params.empty()) {
      throw UnknownGeometry("circle takes {r} or {cx, cy, r}");
    }
    LevelSet ls;
    ls.name = "circle";
    ls.params = {cx, cy, r};
    ls.eval = [=](Vec2 p) {
      double dx = p.x - cx, dy = p.y - cy;
      return dx * dx + dy * dy - r * r;
    };
    ls.grad = [=](Vec2 p) {
      return Vec2{2.0 * (p.x - cx), 2.0 * (p.y - cy)};
    };
    return ls;
  }
  if (name == "star") {
    if (!params.empty()) throw UnknownGeometry("star takes no parameters");
    // r(theta) = 1/2 + sin(5 theta)/7 written implicitly as
    // phi = sqrt(x^2+y^2) - 1/2 - sin(5 theta)/7.
    LevelSet ls;
    ls.name = "star";
    ls.eval = [](Vec2 p) {
      double r = std::hypot(p.x, p.y);
      double th = std::atan2(p.y, p.x);
      return r - 0.5 - kStarAmp * std::sin(5.0 * th);
    };
    ls.grad = [](Vec2 p) {
      double r2 = p.x * p.x + p.y * p.y;
      double r = std::sqrt(r2);
      double th = std::atan2(p.y, p.x);
      double c5 = std::cos(5.0 * th);
      // grad theta = (-y, x)/r^2
      return Vec2{p.x / r + 5.0 * kStarAmp * p.y * c5 / r2,
                  p.y / r - 5.0 * kStarAmp * p.x * c5 / r2};
    };
    return ls;
  }
  throw UnknownGeometry("no built-in level set named '" + name + "'");
}

LevelSet translate_levelset(const LevelSet& ls, Vec2 d) {
  LevelSet out;
  out.name = ls.name + "+offset";
  out.params = ls.params;
  auto f = ls.eval;
  auto g = ls.grad;
  out.eval = [f, d](Vec2 p) { return f(p - d); };
  out.grad = [g, d](Vec2 p) { return g(p - d); };
  return out;
}

Vec2 boundary_normal(const LevelSet& ls, Vec2 p) {
  Vec2 g = ls.grad(p);
  double n = norm(g);
  if (n < 1e-12)
    throw DegenerateGradient("level set gradient vanishes at query point");
  return (1.0 / n) * g;
}

Vec2 segment_root(const LevelSet& ls, Vec2 a, Vec2 b, double tol) {
  const Vec2 d = b - a;
  const double fa0 = ls.eval(a);
  const double fb0 = ls.eval(b);
  if (fa0 == 0.0) return a;
  if (fb0 == 0.0) return b;

  double slo = 0.0, shi = 1.0;
  double flo = fa0, fhi = fb0;
  if (fa0 * fb0 > 0.0) {
    // No endpoint bracket. Scan for an interior crossing (the segment may
    // dip through the boundary and come back).
    constexpr int kScan = 64;
    bool found = false;
    double sprev = 0.0, fprev = fa0;
    for (int i = 1; i <= kScan; ++i) {
      double s = static_cast<double>(i) / kScan;
      double f = ls.eval(a + s * d);
      if (fprev * f <= 0.0) {
        slo = sprev;
        shi = s;
        flo = fprev;
        fhi = f;
        found = true;
        break;
      }
      sprev = s;
      fprev = f;
    }
    if (!found)
      throw NoSignChange("segment does not cross the zero level set");
  }

  const double ftol = tol * std::max(std::abs(fa0), std::abs(fb0));
  double s = slo + (shi - slo) * flo / (flo - fhi);
  double sbest = s;
  double fbest = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 100; ++it) {
    Vec2 q = a + s * d;
    double f = ls.eval(q);
    if (std::abs(f) < fbest) {
      fbest = std::abs(f);
      sbest = s;
    }
    if (std::abs(f) <= ftol) return q;
    if ((f < 0.0) == (flo < 0.0)) {
      slo = s;
      flo = f;
    } else {
      shi = s;
      fhi = f;
    }
    double df = dot(ls.grad(q), d);
    double snew = (df != 0.0) ? s - f / df : -1.0;
    if (!(snew > slo && snew < shi)) snew = 0.5 * (slo + shi);
    s = snew;
    if (shi - slo < 4.0 * std::numeric_limits<double>::epsilon()) break;
  }
  return a + sbest * d;
}

}  // namespace umax
