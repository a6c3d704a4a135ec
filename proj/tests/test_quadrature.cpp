#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "umax/quadrature.hpp"

using namespace umax;

namespace {
// exact value of the reference-triangle monomial integral x^a y^b
double ref_monomial(int a, int b) {
  // a! b! / (a + b + 2)!
  double v = 1.0;
  for (int i = 1; i <= a; ++i) v *= i;
  for (int i = 1; i <= b; ++i) v *= i;
  for (int i = 1; i <= a + b + 2; ++i) v /= i;
  return v;
}
}  // namespace

TEST_CASE("gauss legendre nodes integrate polynomials exactly") {
  for (int n = 1; n <= 12; ++n) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    double sum = 0.0;
    for (double wi : w) sum += wi;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    // monomial moments up to the exactness degree 2n-1
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += w[i] * std::pow(x[i], d);
      double exact = (d % 2 == 0) ? 2.0 / (d + 1) : 0.0;
      CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("reference triangle rule: positive weights, exact moments") {
  for (int order = 0; order <= 10; ++order) {
    const RefRule& r = triangle_rule(order);
    double sum = 0.0;
    for (double w : r.weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(sum == doctest::Approx(0.5).epsilon(1e-14));
    for (int a = 0; a + 0 <= order; ++a) {
      for (int b = 0; a + b <= order; ++b) {
        double s = 0.0;
        for (size_t i = 0; i < r.points.size(); ++i)
          s += r.weights[i] * std::pow(r.points[i].x, a) *
               std::pow(r.points[i].y, b);
        CHECK(s == doctest::Approx(ref_monomial(a, b)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("mapped triangle rule scales with area") {
  Vec2 A{0.2, -0.3}, B{1.1, 0.1}, C{0.4, 0.9};
  double area = 0.5 * std::abs(cross(B - A, C - A));
  QuadRule q = triangle_rule_on(A, B, C, 4);
  CHECK(q.total() == doctest::Approx(area).epsilon(1e-14));
  // integral of x over a triangle is area times centroid x
  double s = 0.0;
  for (int i = 0; i < q.size(); ++i) s += q.weights[i] * q.points[i].x;
  CHECK(s == doctest::Approx(area * (A.x + B.x + C.x) / 3.0).epsilon(1e-13));
}

TEST_CASE("segment rule length and moments") {
  Vec2 a{-0.4, 0.2}, b{0.6, 0.7};
  QuadRule q = segment_rule(a, b, 5);
  CHECK(q.total() == doctest::Approx(dist(a, b)).epsilon(1e-14));
  // integrate the cubic (x + y)^3 along the segment and compare against a
  // dense reference sum
  auto f = [](Vec2 p) { return std::pow(p.x + p.y, 3); };
  double s = 0.0;
  for (int i = 0; i < q.size(); ++i) s += q.weights[i] * f(q.points[i]);
  QuadRule fine = segment_rule(a, b, 40);
  double ref = 0.0;
  for (int i = 0; i < fine.size(); ++i)
    ref += fine.weights[i] * f(fine.points[i]);
  CHECK(s == doctest::Approx(ref).epsilon(1e-13));
}
