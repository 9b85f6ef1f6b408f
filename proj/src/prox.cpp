#include "bdeconv/prox.hpp"

#include <cmath>

namespace bdeconv {

RealVec soft_threshold(const RealVec& q, double tau) {
  if (tau < 0.0) throw std::invalid_argument("soft_threshold: tau must be >= 0");
  RealVec out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double mag = std::abs(q[i]) - tau;
    out[i] = mag > 0.0 ? std::copysign(mag, q[i]) : 0.0;
  }
  return out;
}

double positive_cubic_root(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("positive_cubic_root: need c >= 0");
  if (c == 0.0) return 1.0;

  double t;
  if (c < 1e-8) {
    // Series around c = 0; next term is O(c^3).
    t = 1.0 - c + 3.0 * c * c;
  } else {
    // Hyperbolic form of Cardano for the single-real-root case.
    const double s = std::sqrt(3.0 * c);
    t = 2.0 / s * std::sinh(std::asinh(1.5 * s) / 3.0);
  }
  for (int i = 0; i < 2; ++i) {
    const double f = c * t * t * t + t - 1.0;
    t -= f / (3.0 * c * t * t + 1.0);
  }
  if (std::abs(c * t * t * t + t - 1.0) > 1e-12) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
      const double mid = 0.5 * (lo + hi);
      (c * mid * mid * mid + mid - 1.0 < 0.0 ? lo : hi) = mid;
    }
    t = 0.5 * (lo + hi);
  }
  return t;
}

namespace {

// Clip to the nonpositive part; only these coordinates can be active under
// a nonnegativity constraint.
RealVec clip_nonpositive(const RealVec& v, double shift) {
  RealVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = std::min(v[i] + shift, 0.0);
  return out;
}

// Unique s >= 0 with s = ch2/(s+1+2mu)^2 + cx2/(s+1)^2 (right side strictly
// decreasing, left increasing). Bisection; the bracket is [0, rhs(0)].
double solve_shrink_equation(double ch2, double cx2, double mu) {
  auto rhs = [&](double s) {
    const double dh = s + 1.0 + 2.0 * mu;
    const double dx = s + 1.0;
    return ch2 / (dh * dh) + cx2 / (dx * dx);
  };
  double lo = 0.0, hi = rhs(0.0);
  if (hi <= 0.0) return 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (rhs(mid) - mid > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Point bregman_dc_step(const SubproblemInput& inp) {
  if (!all_finite(inp.g_lin))
    throw std::invalid_argument("bregman_dc_step: non-finite coefficients");
  if (inp.lambda_theta < 0.0)
    throw std::invalid_argument("bregman_dc_step: negative lambda_theta");
  const bool h_nonneg = inp.constraint.h_nonneg();
  const bool x_nonneg = inp.constraint.x_nonneg();

  if (inp.reg == RegKind::l2sq_h) {
    const double mu = inp.lambda_theta;
    RealVec ch = h_nonneg ? clip_nonpositive(inp.g_lin.h, 0.0) : inp.g_lin.h;
    RealVec cx = x_nonneg ? clip_nonpositive(inp.g_lin.x, 0.0) : inp.g_lin.x;
    const double s = solve_shrink_equation(norm_sq(ch), norm_sq(cx), mu);
    scale(ch, -1.0 / (s + 1.0 + 2.0 * mu));
    scale(cx, -1.0 / (s + 1.0));
    return Point(std::move(ch), std::move(cx));
  }

  const double tau = inp.reg == RegKind::l1_h ? inp.lambda_theta : 0.0;
  RealVec u = h_nonneg ? clip_nonpositive(inp.g_lin.h, tau)
                       : soft_threshold(inp.g_lin.h, tau);
  RealVec v = x_nonneg ? clip_nonpositive(inp.g_lin.x, 0.0) : inp.g_lin.x;
  const double t = positive_cubic_root(norm_sq(u) + norm_sq(v));
  scale(u, -t);
  scale(v, -t);
  return Point(std::move(u), std::move(v));
}

Point euclidean_prox(const Point& q, double step_theta,
                     const ConstraintSpec& constraint,
                     const RegularizerSpec& reg) {
  if (step_theta < 0.0)
    throw std::invalid_argument("euclidean_prox: negative step_theta");
  Point out = q;
  switch (reg.kind) {
    case RegKind::l1_h:
      if (constraint.h_nonneg()) {
        for (double& v : out.h) v = std::max(v - step_theta, 0.0);
      } else {
        out.h = soft_threshold(out.h, step_theta);
      }
      break;
    case RegKind::l2sq_h: {
      const double shrink = 1.0 / (1.0 + 2.0 * step_theta);
      for (double& v : out.h) {
        v *= shrink;
        if (constraint.h_nonneg()) v = std::max(v, 0.0);
      }
      break;
    }
    case RegKind::none:
      if (constraint.h_nonneg())
        for (double& v : out.h) v = std::max(v, 0.0);
      break;
  }
  if (constraint.x_nonneg())
    for (double& v : out.x) v = std::max(v, 0.0);
  return out;
}

}  // namespace bdeconv
