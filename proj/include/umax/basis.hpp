#pragma once

#include "umax/geometry.hpp"

namespace umax {

// dim P_degree in two variables
inline int poly_dim(int degree) { return (degree + 1) * (degree + 2) / 2; }

constexpr int kMaxDegree = 10;
constexpr int kMaxModes = (kMaxDegree + 1) * (kMaxDegree + 2) / 2;

// Modal basis on the reference triangle {(0,0),(1,0),(0,1)}, orthonormal in
// L2: warped tensor products of Legendre and Jacobi polynomials evaluated
// through their three-term recurrences (no collapsed-coordinate
// singularity). Modes are ordered by total degree, and the degree-one modes
// vanish at the barycenter.
//
// vals must hold poly_dim(degree) entries; grads may be null when gradients
// are not needed.
void modal_basis(int degree, Vec2 xhat, double* vals, Vec2* grads);

}  // namespace umax
