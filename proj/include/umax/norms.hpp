#pragma once

#include "umax/cases.hpp"
#include "umax/forms.hpp"

namespace umax {

// Squared contributions to the discrete error norms, plus the three
// headline numbers reported by a convergence study. The field norm is the
// extended one (volume terms, jump penalties, extension penalty, and the
// scaled curl averages); the multiplier norm mirrors it.
struct ErrorReport {
  double l2_u = 0.0;
  double anorm_u = 0.0;
  double cnorm_p = 0.0;

  double vol_l2 = 0.0, vol_rot = 0.0, vol_div = 0.0;
  double face_tjump = 0.0, face_njump = 0.0, gamma_tang = 0.0;
  double face_avg = 0.0, gamma_avg = 0.0, gpen = 0.0;
  double p_l2 = 0.0, p_jump = 0.0, p_gamma = 0.0, p_avg = 0.0, jpen = 0.0;
};

// Elementwise L2 projection of a smooth function onto the space, full-cell
// rules of the given order.
Eigen::VectorXd interpolate_vector(const BackgroundMesh& mesh,
                                   const CutClassification& cls,
                                   const FeSpace& V,
                                   const std::function<Vec2(Vec2)>& f,
                                   int order);
Eigen::VectorXd interpolate_scalar(const BackgroundMesh& mesh,
                                   const CutClassification& cls,
                                   const FeSpace& Q,
                                   const std::function<double(Vec2)>& f,
                                   int order);

// Error of a discrete solution against the exact fields. The context's
// quadrature should be built at a higher order than assembly so the
// reported numbers are limited by the discretization, not the measurement.
// The exact solution enters every jump, average, and extension difference
// as a single-valued trace; in the extension-penalty terms it cancels, so
// those reduce to the penalties of the discrete function itself.
ErrorReport compute_errors(const AssemblyContext& c,
                           const ManufacturedCase& mc,
                           const Eigen::VectorXd& u, const Eigen::VectorXd& p);

}  // namespace umax
