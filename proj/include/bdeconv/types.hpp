#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdeconv {

using RealVec = std::vector<double>;
using CplxVec = std::vector<std::complex<double>>;

/// A point z = (h, x) of the joint variable space R^{d1+d2}.
struct Point {
  RealVec h;
  RealVec x;

  Point() = default;
  Point(RealVec h_, RealVec x_) : h(std::move(h_)), x(std::move(x_)) {}
  static Point zeros(std::size_t d1, std::size_t d2) {
    return Point(RealVec(d1, 0.0), RealVec(d2, 0.0));
  }

  std::size_t dim() const { return h.size() + x.size(); }
};

inline void check_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw std::invalid_argument(std::string(what) + ": expected length " +
                                std::to_string(want) + ", got " +
                                std::to_string(got));
}

inline double dot(const RealVec& a, const RealVec& b) {
  check_dim(b.size(), a.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(const RealVec& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

inline double norm_sq(const CplxVec& a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return s;
}

inline double dot(const Point& a, const Point& b) {
  return dot(a.h, b.h) + dot(a.x, b.x);
}

inline double norm_sq(const Point& a) { return norm_sq(a.h) + norm_sq(a.x); }

// y += alpha * x
inline void axpy(double alpha, const RealVec& x, RealVec& y) {
  check_dim(y.size(), x.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void axpy(double alpha, const Point& x, Point& y) {
  axpy(alpha, x.h, y.h);
  axpy(alpha, x.x, y.x);
}

inline void scale(RealVec& a, double alpha) {
  for (double& v : a) v *= alpha;
}

inline void scale(Point& a, double alpha) {
  scale(a.h, alpha);
  scale(a.x, alpha);
}

inline Point operator+(const Point& a, const Point& b) {
  Point r = a;
  axpy(1.0, b, r);
  return r;
}

inline Point operator-(const Point& a, const Point& b) {
  Point r = a;
  axpy(-1.0, b, r);
  return r;
}

inline Point operator*(double alpha, const Point& a) {
  Point r = a;
  scale(r, alpha);
  return r;
}

inline bool all_finite(const RealVec& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

inline bool all_finite(const Point& a) {
  return all_finite(a.h) && all_finite(a.x);
}

}  // namespace bdeconv
