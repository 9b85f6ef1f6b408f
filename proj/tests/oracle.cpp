#include "oracle.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace bdeconv::oracle {

CplxMatrix densify(const StructuredOperator& op) {
  if (op.output_dim() * op.input_dim() > 1000000)
    throw std::invalid_argument("densify: operator too large");
  CplxMatrix m(op.output_dim(), op.input_dim());
  RealVec e(op.input_dim(), 0.0);
  for (std::size_t j = 0; j < op.input_dim(); ++j) {
    e[j] = 1.0;
    const CplxVec col = op.apply(e);
    e[j] = 0.0;
    for (std::size_t i = 0; i < op.output_dim(); ++i) m.at(i, j) = col[i];
  }
  return m;
}

CplxVec dense_apply(const CplxMatrix& m, const RealVec& v) {
  check_dim(v.size(), m.cols, "dense_apply");
  CplxVec out(m.rows, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) out[r] += m.at(r, c) * v[c];
  return out;
}

RealVec dense_adjoint_real(const CplxMatrix& m, const CplxVec& w) {
  check_dim(w.size(), m.rows, "dense_adjoint_real");
  RealVec out(m.cols, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c)
      out[c] += (std::conj(m.at(r, c)) * w[r]).real();
  return out;
}

RealVec dense_row_norms_sq(const CplxMatrix& m) {
  RealVec out(m.rows, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) out[r] += std::norm(m.at(r, c));
  return out;
}

Point fd_gradient(const std::function<double(const Point&)>& fun,
                  const Point& z, double step) {
  if (step <= 0.0) throw std::invalid_argument("fd_gradient: step must be > 0");
  Point g = Point::zeros(z.h.size(), z.x.size());
  Point probe = z;
  for (std::size_t i = 0; i < z.h.size(); ++i) {
    probe.h[i] = z.h[i] + step;
    const double fp = fun(probe);
    probe.h[i] = z.h[i] - step;
    const double fm = fun(probe);
    probe.h[i] = z.h[i];
    g.h[i] = (fp - fm) / (2.0 * step);
  }
  for (std::size_t i = 0; i < z.x.size(); ++i) {
    probe.x[i] = z.x[i] + step;
    const double fp = fun(probe);
    probe.x[i] = z.x[i] - step;
    const double fm = fun(probe);
    probe.x[i] = z.x[i];
    g.x[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

double fd_quadratic_form(const std::function<double(const Point&)>& fun,
                         const Point& z, const Point& w, double step) {
  Point zp = z, zm = z;
  axpy(step, w, zp);
  axpy(-step, w, zm);
  return (fun(zp) - 2.0 * fun(z) + fun(zm)) / (step * step);
}

RealVec direct_convolve(const RealVec& f, const RealVec& g) {
  return direct_convolve(f, g, Grid::line(f.size()));
}

RealVec direct_convolve(const RealVec& f, const RealVec& g, Grid grid) {
  if (f.size() != g.size() || f.size() != grid.size())
    throw std::invalid_argument("direct_convolve: size mismatch");
  const std::size_t rows = grid.rows, cols = grid.cols;
  RealVec out(f.size(), 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      double s = 0.0;
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          s += f[i * cols + j] *
               g[((r - i + rows) % rows) * cols + ((c - j + cols) % cols)];
      out[r * cols + c] = s;
    }
  return out;
}

CplxVec slow_dft_unitary(const CplxVec& v, Grid grid) {
  check_dim(v.size(), grid.size(), "slow_dft_unitary");
  const double tau = 2.0 * std::numbers::pi;
  const std::size_t rows = grid.rows, cols = grid.cols;
  CplxVec out(v.size(), 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      std::complex<double> s = 0.0;
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
          const double angle = -tau * (static_cast<double>(r * i) / rows +
                                       static_cast<double>(c * j) / cols);
          s += v[i * cols + j] * std::polar(1.0, angle);
        }
      out[r * cols + c] = s / std::sqrt(static_cast<double>(v.size()));
    }
  return out;
}

double subproblem_objective(const SubproblemInput& inp, const Point& z) {
  if (inp.constraint.h_nonneg())
    for (double v : z.h)
      if (v < 0.0) return std::numeric_limits<double>::infinity();
  if (inp.constraint.x_nonneg())
    for (double v : z.x)
      if (v < 0.0) return std::numeric_limits<double>::infinity();
  double reg = 0.0;
  if (inp.reg == RegKind::l1_h)
    for (double v : z.h) reg += std::abs(v);
  else if (inp.reg == RegKind::l2sq_h)
    for (double v : z.h) reg += v * v;
  const double s = norm_sq(z);
  return dot(inp.g_lin, z) + inp.lambda_theta * reg + 0.25 * s * s + 0.5 * s;
}

Point subproblem_oracle(const SubproblemInput& inp) {
  const std::size_t dh = inp.g_lin.h.size(), dx = inp.g_lin.x.size();
  if (dh + dx > 64) throw std::invalid_argument("subproblem_oracle: too large");
  Point z = Point::zeros(dh, dx);
  const double mu = inp.lambda_theta;

  auto smooth_grad = [&](const Point& p) {
    Point g = inp.g_lin;
    const double c = norm_sq(p) + 1.0;
    axpy(c, p, g);
    if (inp.reg == RegKind::l2sq_h)
      for (std::size_t i = 0; i < p.h.size(); ++i) g.h[i] += 2.0 * mu * p.h[i];
    return g;
  };

  double prev_obj = subproblem_objective(inp, z);
  for (int it = 0; it < 100000; ++it) {
    const double curv = 3.0 * norm_sq(z) + 2.0 + 2.0 * mu + std::sqrt(norm_sq(inp.g_lin));
    double eta = 1.0 / curv;
    const Point g = smooth_grad(z);
    Point next;
    double obj = 0.0;
    // Backtrack on the combined objective to stay monotone.
    for (int bt = 0; bt < 60; ++bt) {
      next = z;
      axpy(-eta, g, next);
      if (inp.reg == RegKind::l1_h) {
        for (double& v : next.h) {
          const double t = std::abs(v) - eta * mu;
          v = t > 0.0 ? std::copysign(t, v) : 0.0;
        }
      }
      if (inp.constraint.h_nonneg())
        for (double& v : next.h) v = std::max(v, 0.0);
      if (inp.constraint.x_nonneg())
        for (double& v : next.x) v = std::max(v, 0.0);
      obj = subproblem_objective(inp, next);
      if (obj <= prev_obj + 1e-14 * (1.0 + std::abs(prev_obj))) break;
      eta *= 0.5;
    }
    const Point diff = next - z;
    const double move = std::sqrt(norm_sq(diff));
    z = std::move(next);
    prev_obj = obj;
    if (move <= 1e-12 * (1.0 + std::sqrt(norm_sq(z))) && it > 3) return z;
  }
  throw std::runtime_error("subproblem_oracle: no convergence in 1e5 steps");
}

double cubic_root_bisect(double c) {
  if (c < 0.0) throw std::invalid_argument("cubic_root_bisect: c >= 0");
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (c * mid * mid * mid + mid - 1.0 < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SvdTriple dense_top_singular(const CplxMatrix& m) {
  Eigen::MatrixXcd em(m.rows, m.cols);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) em(r, c) = m.at(r, c);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(em, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdTriple out;
  out.sigma = svd.singularValues()(0);
  out.u.resize(m.rows);
  out.v.resize(m.cols);
  for (std::size_t r = 0; r < m.rows; ++r) out.u[r] = svd.matrixU()(r, 0);
  for (std::size_t c = 0; c < m.cols; ++c) out.v[c] = svd.matrixV()(c, 0);
  return out;
}

}  // namespace bdeconv::oracle
