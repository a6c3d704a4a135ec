#pragma once

#include "umax/forms.hpp"

namespace umax {

struct Solution {
  Eigen::VectorXd u;      // field coefficients
  Eigen::VectorXd p;      // multiplier coefficients
  double residual = 0.0;  // backward error of the linear solve
};

// Direct sparse factorization of the full saddle matrix. Throws
// SingularSystem when the factorization fails or the backward error
// ||Kx - b|| / (||K|| ||x|| + ||b||) exceeds 1e-10.
Solution solve_saddle(const SaddleSystem& sys);

}  // namespace umax
