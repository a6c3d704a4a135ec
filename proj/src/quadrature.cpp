#include "umax/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace umax {

double QuadRule::total() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void QuadRule::append(const QuadRule& other) {
  points.insert(points.end(), other.points.begin(), other.points.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
  normals.insert(normals.end(), other.normals.begin(), other.normals.end());
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev estimate of the i-th root (descending), then Newton on the
    // Legendre three-term recurrence.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    nodes[i] = -z;
    nodes[n - 1 - i] = z;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

QuadRule segment_rule(Vec2 a, Vec2 b, int order) {
  int n = std::max(1, (order + 2) / 2);
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  QuadRule rule;
  rule.points.reserve(n);
  rule.weights.reserve(n);
  double half = 0.5 * dist(a, b);
  Vec2 mid = 0.5 * (a + b);
  Vec2 dir = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    rule.points.push_back(mid + x[i] * dir);
    rule.weights.push_back(w[i] * half);
  }
  return rule;
}

const RefRule& triangle_rule(int order) {
  static std::unordered_map<int, RefRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  // Collapsed square: x = a(1-b), y = b with a, b in [0,1]. The map's
  // Jacobian (1-b) keeps every weight positive and raises the required
  // degree in b by one.
  int na = std::max(1, (order + 1 + 1) / 2);
  int nb = std::max(1, (order + 2 + 1) / 2);
  std::vector<double> xa, wa, xb, wb;
  gauss_legendre(na, xa, wa);
  gauss_legendre(nb, xb, wb);
  RefRule rule;
  rule.points.reserve(na * nb);
  rule.weights.reserve(na * nb);
  for (int i = 0; i < na; ++i) {
    double a = 0.5 * (xa[i] + 1.0), va = 0.5 * wa[i];
    for (int j = 0; j < nb; ++j) {
      double b = 0.5 * (xb[j] + 1.0), vb = 0.5 * wb[j];
      rule.points.push_back({a * (1.0 - b), b});
      rule.weights.push_back(va * vb * (1.0 - b));
    }
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

QuadRule triangle_rule_on(Vec2 A, Vec2 B, Vec2 C, int order) {
  const RefRule& ref = triangle_rule(order);
  Vec2 e1 = B - A, e2 = C - A;
  double jac = std::abs(cross(e1, e2));
  QuadRule rule;
  int n = static_cast<int>(ref.points.size());
  rule.points.reserve(n);
  rule.weights.reserve(n);
  for (int i = 0; i < n; ++i) {
    Vec2 q = ref.points[i];
    rule.points.push_back(A + q.x * e1 + q.y * e2);
    rule.weights.push_back(ref.weights[i] * jac);
  }
  return rule;
}

}  // namespace umax
