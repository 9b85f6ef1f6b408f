#include "bdeconv/bregman.hpp"

namespace bdeconv {

double kernel_value(const Point& z) {
  const double s = norm_sq(z);
  return 0.25 * s * s + 0.5 * s;
}

Point kernel_grad(const Point& z) {
  Point g = z;
  scale(g, norm_sq(z) + 1.0);
  return g;
}

double bregman_distance(const Point& z, const Point& w) {
  const Point g = kernel_grad(w);
  const Point d = z - w;
  return kernel_value(z) - kernel_value(w) - dot(g, d);
}

Point hessian_apply(const Point& z, const Point& w) {
  const double s = norm_sq(z);
  Point out = w;
  scale(out, s + 1.0);
  axpy(2.0 * dot(z, w), z, out);
  return out;
}

Point hessian_inverse_apply(const Point& z, const Point& w) {
  const double s = norm_sq(z);
  Point out = w;
  axpy(-2.0 * dot(z, w) / (3.0 * s + 1.0), z, out);
  scale(out, 1.0 / (s + 1.0));
  return out;
}

}  // namespace bdeconv
