#pragma once

#include "bdeconv/types.hpp"

namespace bdeconv {

/// Kernel generating distance adapted to the quartic objective:
///   H(z) = 1/4 (|h|^2 + |x|^2)^2 + 1/2 (|h|^2 + |x|^2).
double kernel_value(const Point& z);

/// grad H(z) = (|z|^2 + 1) z.
Point kernel_grad(const Point& z);

/// Bregman distance D_H(z, w) = H(z) - H(w) - <grad H(w), z - w>.
/// Nonnegative, zero iff z == w.
double bregman_distance(const Point& z, const Point& w);

/// Action of the Hessian of H at z: (|z|^2 + 1) w + 2 <z, w> z.
Point hessian_apply(const Point& z, const Point& w);

/// Action of the inverse Hessian of H at z, matrix-free:
///   (1 / (|z|^2 + 1)) (w - 2 <z, w> z / (3 |z|^2 + 1)).
Point hessian_inverse_apply(const Point& z, const Point& w);

}  // namespace bdeconv
