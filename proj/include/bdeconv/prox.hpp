#pragma once

#include "bdeconv/model.hpp"
#include "bdeconv/types.hpp"

namespace bdeconv {

/// Componentwise soft-thresholding: sign(q_i) * max(|q_i| - tau, 0).
RealVec soft_threshold(const RealVec& q, double tau);

/// The unique positive real root of c*t^3 + t - 1 = 0 for c >= 0, with
/// residual below 1e-12. Cardano's hyperbolic branch plus a Newton polish;
/// falls back to bisection on [0, 1] if the polish is not enough.
double positive_cubic_root(double c);

/// Data of one Bregman proximal step: minimize over the constraint set
///   <g_lin, z> + lambda_theta * reg(h) + H(z),
/// where g_lin = lambda * (grad F1(anchor) - grad F2(z_k)) - grad H(anchor).
struct SubproblemInput {
  Point g_lin;
  double lambda_theta = 0.0;
  RegKind reg = RegKind::none;
  ConstraintSpec constraint;
};

/// Closed-form minimizer of the Bregman subproblem. The l1 and
/// unregularized paths reduce to a soft-threshold (or a clip against the
/// nonnegativity constraint) followed by one positive cubic root; the
/// smooth l2 path solves the analogous scalar equation with the h-block
/// shrunk by the extra 2*lambda_theta curvature.
Point bregman_dc_step(const SubproblemInput& inp);

/// argmin_z 1/2 |z - q|^2 + step_theta * reg(h) over the constraint set.
/// This is the proximal map used by the Euclidean-geometry baselines.
Point euclidean_prox(const Point& q, double step_theta,
                     const ConstraintSpec& constraint,
                     const RegularizerSpec& reg);

}  // namespace bdeconv
