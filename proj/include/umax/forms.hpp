#pragma once

#include <Eigen/Sparse>
#include <functional>

#include "umax/cases.hpp"
#include "umax/classify.hpp"
#include "umax/cutquad.hpp"
#include "umax/space.hpp"

namespace umax {

using SpMat = Eigen::SparseMatrix<double>;

// Material data and the stabilization weight. grad_eps must be the analytic
// gradient of eps so the weighted divergence div(eps v) is exact.
struct Coefficients {
  std::function<double(Vec2)> mu;
  std::function<double(Vec2)> eps;
  std::function<Vec2(Vec2)> grad_eps;
  double k = 1.0;
  double alpha = 18.0;

  static Coefficients vacuum(double k, double alpha) {
    Coefficients c;
    c.mu = [](Vec2) { return 1.0; };
    c.eps = [](Vec2) { return 1.0; };
    c.grad_eps = [](Vec2) { return Vec2{0.0, 0.0}; };
    c.k = k;
    c.alpha = alpha;
    return c;
  }
};

// default stabilization weight for scalar degree m
inline double auto_alpha(int m) { return 3.0 * (m + 1) * (m + 1) + 15.0; }

// Everything assembly reads; bundled so the individual assemble_* calls
// stay short.
struct AssemblyContext {
  const BackgroundMesh& mesh;
  const CutClassification& cls;
  const ExtensionMap& ext;
  const FeSpace& V;  // vector space, degree r
  const FeSpace& Q;  // scalar space, degree m
  const CutGeometry& geom;
  const Coefficients& coef;
};

// Curl-curl and weighted-divergence volume terms plus the symmetric trace
// terms on cut faces and on the boundary.
SpMat assemble_a0(const AssemblyContext& c);
// Tangential jump penalties (weighted alpha on faces and boundary) plus the
// unweighted normal-component jump penalty on faces.
SpMat assemble_a1(const AssemblyContext& c);
// Mixed coupling: weighted divergence against the multiplier minus the
// normal-jump/average face correction. Rows index Q, columns index V.
SpMat assemble_b(const AssemblyContext& c);
// Multiplier jump penalty: h_f-weighted jumps over full faces (or only the
// inside part when on_cut_part is set) plus the h_K-weighted boundary mass.
SpMat assemble_c(const AssemblyContext& c, bool on_cut_part = false);
SpMat assemble_c_faces(const AssemblyContext& c, bool on_cut_part = false);
SpMat assemble_c_gamma(const AssemblyContext& c);
// Direct-extension penalties over full cut cells: value difference for the
// multiplier (J), curl difference for the field (G).
SpMat assemble_j(const AssemblyContext& c);
SpMat assemble_g(const AssemblyContext& c);
// Plain vector mass over the inside parts.
SpMat assemble_mass(const AssemblyContext& c);
// Load vector from the volume source and the tangential boundary datum.
Eigen::VectorXd assemble_rhs(const AssemblyContext& c,
                             const std::function<Vec2(Vec2)>& j,
                             const std::function<double(Vec2, Vec2)>& g);

// The full saddle system
//   [ A0 + A1 + G - k^2 M   B^T ] [u]   [l]
//   [ B                    -(C+J)] [p] = [0].
struct SaddleSystem {
  SpMat A0, A1, G, M;  // field block, n_u square
  SpMat B;             // n_p x n_u
  SpMat C, J;          // multiplier block, n_p square
  Eigen::VectorXd l;
  long nu = 0, np = 0;
  double k = 1.0;

  SpMat field_block() const;  // A0 + A1 + G - k^2 M
  SpMat full() const;
};

SaddleSystem assemble_system(const AssemblyContext& c,
                             const std::function<Vec2(Vec2)>& j,
                             const std::function<double(Vec2, Vec2)>& g,
                             bool c_on_cut_part = false);

// Gram matrices of every term entering the discrete norms, assembled once
// and combined; the solver norms, the inf-sup estimate, and the stability
// probes all read from here so there is a single source of truth.
struct NormGrams {
  // field space
  SpMat rot, div, mass;      // volume terms over the inside parts
  SpMat tjump_f, njump_f;    // 1/h_f face jump terms
  SpMat tjump_g;             // 1/h_K boundary tangential term
  SpMat avg_f, avg_g;        // h_f / h_K curl average terms
  SpMat gpen;                // extension penalty, equals G
  // multiplier space
  SpMat qmass;
  SpMat qjump_f, qjump_g;    // h_f face jumps (inside parts), h_K boundary
  SpMat qavg_f;              // h_f averages
  SpMat jpen;                // extension penalty, equals J

  SpMat a_seminorm() const;        // rot + div + jumps
  SpMat a_norm(double k) const;    // + k^2 mass + extension penalty
  SpMat A_norm(double k) const;    // + curl averages
  SpMat c_seminorm() const;
  SpMat c_norm() const;
  SpMat C_norm() const;
};

NormGrams assemble_norm_grams(const AssemblyContext& c);

}  // namespace umax
