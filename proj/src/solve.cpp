#include "umax/solve.hpp"

#include <Eigen/SparseLU>
#include <cmath>

#include "umax/errors.hpp"

namespace umax {

Solution solve_saddle(const SaddleSystem& sys) {
  SpMat K = sys.full();
  K.makeCompressed();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(sys.nu + sys.np);
  b.head(sys.nu) = sys.l;

  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(K);
  lu.factorize(K);
  if (lu.info() != Eigen::Success)
    throw SingularSystem("sparse factorization failed");
  Eigen::VectorXd x = lu.solve(b);
  if (lu.info() != Eigen::Success) throw SingularSystem("triangular solve failed");
  // one step of iterative refinement cleans up roundoff on badly cut grids
  x += lu.solve(b - K * x);

  double knorm = 0.0;
  for (int c = 0; c < K.outerSize(); ++c) {
    double col = 0.0;
    for (SpMat::InnerIterator it(K, c); it; ++it) col += std::abs(it.value());
    knorm = std::max(knorm, col);
  }
  double backward =
      (K * x - b).norm() / (knorm * x.norm() + b.norm() + 1e-300);
  if (!std::isfinite(backward) || backward > 1e-10)
    throw SingularSystem("solution residual too large");

  Solution s;
  s.u = x.head(sys.nu);
  s.p = x.tail(sys.np);
  s.residual = backward;
  return s;
}

}  // namespace umax
