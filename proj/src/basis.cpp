#include "umax/basis.hpp"

#include <cassert>
#include <cmath>

namespace umax {

// The basis on the unit triangle with vertices (0,0), (1,0), (0,1) is
//   phi_pq(x, y) = N_pq R_p(u, v) S_q(y),   u = 2x + y - 1,  v = 1 - y,
// where R_p is the scaled Legendre polynomial v^p P_p(u/v) (a genuine
// polynomial in x and y, built by its own recurrence so v = 0 needs no
// special casing), S_q the Jacobi(2p+1, 0) polynomial in t = 2y - 1, and
//   N_pq = sqrt(2 (2p+1) (p+q+1)).
// Modes are ordered by total degree d = p + q, then by q ascending.
void modal_basis(int degree, Vec2 xhat, double* vals, Vec2* grads) {
  assert(degree >= 0 && degree <= kMaxDegree);
  const double u = 2.0 * xhat.x + xhat.y - 1.0;
  const double v = 1.0 - xhat.y;
  const double t = 2.0 * xhat.y - 1.0;

  // R_p and partials; du = (2, 1), dv = (0, -1)
  double R[kMaxDegree + 1], Rx[kMaxDegree + 1], Ry[kMaxDegree + 1];
  R[0] = 1.0;
  Rx[0] = Ry[0] = 0.0;
  if (degree >= 1) {
    R[1] = u;
    Rx[1] = 2.0;
    Ry[1] = 1.0;
  }
  for (int p = 1; p < degree; ++p) {
    double a = (2.0 * p + 1.0) / (p + 1.0);
    double b = static_cast<double>(p) / (p + 1.0);
    R[p + 1] = a * u * R[p] - b * v * v * R[p - 1];
    Rx[p + 1] = a * (2.0 * R[p] + u * Rx[p]) - b * v * v * Rx[p - 1];
    Ry[p + 1] = a * (R[p] + u * Ry[p]) -
                b * (v * v * Ry[p - 1] - 2.0 * v * R[p - 1]);
  }

  // S_q chains per p; dt/dy = 2
  int idx = 0;
  for (int d = 0; d <= degree; ++d) {
    for (int q = 0; q <= d; ++q) {
      int p = d - q;
      double alpha = 2.0 * p + 1.0;
      double Sq = 1.0, Stq = 0.0;
      if (q >= 1) {
        double s0 = 1.0, st0 = 0.0;
        Sq = 0.5 * (alpha + (alpha + 2.0) * t);
        Stq = 0.5 * (alpha + 2.0);
        for (int m = 2; m <= q; ++m) {
          double c1 = 2.0 * m * (m + alpha) * (2.0 * m + alpha - 2.0);
          double c2 = (2.0 * m + alpha - 1.0) * (2.0 * m + alpha) *
                      (2.0 * m + alpha - 2.0);
          double c3 = (2.0 * m + alpha - 1.0) * alpha * alpha;
          double c4 = 2.0 * (m + alpha - 1.0) * (m - 1.0) * (2.0 * m + alpha);
          double s2 = ((c2 * t + c3) * Sq - c4 * s0) / c1;
          double st2 = ((c2 * t + c3) * Stq + c2 * Sq - c4 * st0) / c1;
          s0 = Sq;
          st0 = Stq;
          Sq = s2;
          Stq = st2;
        }
      }
      double N = std::sqrt(2.0 * (2.0 * p + 1.0) * (p + q + 1.0));
      vals[idx] = N * R[p] * Sq;
      if (grads) {
        grads[idx].x = N * Rx[p] * Sq;
        grads[idx].y = N * (Ry[p] * Sq + R[p] * 2.0 * Stq);
      }
      ++idx;
    }
  }
}

}  // namespace umax
