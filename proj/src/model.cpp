#include "bdeconv/model.hpp"

#include <cmath>

namespace bdeconv {

RegKind reg_kind_from_string(const std::string& s) {
  if (s == "l1" || s == "l1_h") return RegKind::l1_h;
  if (s == "l2" || s == "l2sq" || s == "l2sq_h") return RegKind::l2sq_h;
  if (s == "none") return RegKind::none;
  throw std::invalid_argument("unknown regularizer kind: " + s);
}

std::string to_string(RegKind k) {
  switch (k) {
    case RegKind::l1_h: return "l1";
    case RegKind::l2sq_h: return "l2";
    case RegKind::none: return "none";
  }
  return "?";
}

ConstraintKind constraint_from_string(const std::string& s) {
  if (s == "free") return ConstraintKind::free_space;
  if (s == "nonneg_both" || s == "nonneg") return ConstraintKind::nonneg_both;
  if (s == "nonneg_h") return ConstraintKind::nonneg_h;
  throw std::invalid_argument("unknown constraint kind: " + s);
}

std::string to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::free_space: return "free";
    case ConstraintKind::nonneg_both: return "nonneg_both";
    case ConstraintKind::nonneg_h: return "nonneg_h";
  }
  return "?";
}

DeconvProblem::DeconvProblem(StructuredOperator opB, StructuredOperator opA,
                             CplxVec y, RegularizerSpec reg,
                             ConstraintSpec constraint)
    : opB_(std::move(opB)),
      opA_(std::move(opA)),
      y_(std::move(y)),
      reg_(reg),
      constraint_(constraint) {
  if (opB_.output_dim() != y_.size() || opA_.output_dim() != y_.size())
    throw std::invalid_argument("operator output dims must match length(y)");
  if (reg_.theta < 0.0) throw std::invalid_argument("theta must be >= 0");

  b_rows_sq_ = opB_.row_norms_sq();
  a_rows_sq_ = opA_.row_norms_sq();
  y_abs_sq_.resize(y_.size());
  for (std::size_t j = 0; j < y_.size(); ++j) {
    y_abs_sq_[j] = std::norm(y_[j]);
    norm_y_sq_ += y_abs_sq_[j];
  }
  double L = 0.0;
  for (std::size_t j = 0; j < y_.size(); ++j) {
    const double b2 = b_rows_sq_[j], a2 = a_rows_sq_[j];
    L += 3.0 * b2 * b2 + 3.0 * a2 * a2 + b2 * a2 + y_abs_sq_[j] * b2 + a2;
  }
  smad_L_ = L;
}

PointEval DeconvProblem::eval(const Point& z) const {
  check_dim(z.h.size(), d1(), "DeconvProblem: h");
  check_dim(z.x.size(), d2(), "DeconvProblem: x");
  return PointEval{opB_.apply(z.h), opA_.apply(z.x)};
}

double DeconvProblem::loss_F(const PointEval& e) const {
  double s = 0.0;
  for (std::size_t j = 0; j < y_.size(); ++j)
    s += std::norm(e.bh[j] * std::conj(e.ax[j]) - y_[j]);
  return 0.5 * s;
}

double DeconvProblem::f1_value(const PointEval& e) const {
  double quart = 0.0, cross = 0.0, yc = 0.0, a2 = 0.0;
  for (std::size_t j = 0; j < y_.size(); ++j) {
    const double cb = std::norm(e.bh[j]);
    const double ca = std::norm(e.ax[j]);
    quart += cb * cb + ca * ca;
    cross += cb * ca;
    yc += y_abs_sq_[j] * cb;
    a2 += ca;
  }
  return 0.25 * quart + 0.5 * (cross + yc + a2 + norm_y_sq_);
}

double DeconvProblem::f2_value(const PointEval& e) const {
  // The coupling term is 1/2 |conj(y) .* Bh + Ax|^2. Pairing Ax (rather
  // than its conjugate) with conj(y) .* Bh is what makes F1 - F2 equal F
  // identically for complex spectra; the two variants agree when all
  // spectra are conjugate-symmetric.
  double quart = 0.0, coupling = 0.0;
  for (std::size_t j = 0; j < y_.size(); ++j) {
    const double cb = std::norm(e.bh[j]);
    const double ca = std::norm(e.ax[j]);
    quart += cb * cb + ca * ca;
    coupling += std::norm(std::conj(y_[j]) * e.bh[j] + e.ax[j]);
  }
  return 0.25 * quart + 0.5 * coupling;
}

Point DeconvProblem::grad_f1(const PointEval& e) const {
  const std::size_t mm = y_.size();
  CplxVec gh(mm), gx(mm);
  for (std::size_t j = 0; j < mm; ++j) {
    const double cb = std::norm(e.bh[j]);
    const double ca = std::norm(e.ax[j]);
    gh[j] = (cb + ca + y_abs_sq_[j]) * e.bh[j];
    gx[j] = (cb + ca + 1.0) * e.ax[j];
  }
  return Point(opB_.adjoint_apply(gh), opA_.adjoint_apply(gx));
}

Point DeconvProblem::grad_f2(const PointEval& e) const {
  const std::size_t mm = y_.size();
  CplxVec gh(mm), gx(mm);
  for (std::size_t j = 0; j < mm; ++j) {
    const std::complex<double> r = std::conj(y_[j]) * e.bh[j] + e.ax[j];
    gh[j] = std::norm(e.bh[j]) * e.bh[j] + y_[j] * r;
    gx[j] = std::norm(e.ax[j]) * e.ax[j] + r;
  }
  return Point(opB_.adjoint_apply(gh), opA_.adjoint_apply(gx));
}

RealVec DeconvProblem::grad_F_h(const PointEval& e) const {
  const std::size_t mm = y_.size();
  CplxVec g(mm);
  for (std::size_t j = 0; j < mm; ++j) {
    const std::complex<double> rho = e.bh[j] * std::conj(e.ax[j]) - y_[j];
    g[j] = rho * e.ax[j];
  }
  return opB_.adjoint_apply(g);
}

RealVec DeconvProblem::grad_F_x(const PointEval& e) const {
  const std::size_t mm = y_.size();
  CplxVec g(mm);
  for (std::size_t j = 0; j < mm; ++j) {
    const std::complex<double> rho = e.bh[j] * std::conj(e.ax[j]) - y_[j];
    g[j] = std::conj(rho) * e.bh[j];
  }
  return opA_.adjoint_apply(g);
}

double DeconvProblem::reg_value(const Point& z) const {
  switch (reg_.kind) {
    case RegKind::none: return 0.0;
    case RegKind::l1_h: {
      double s = 0.0;
      for (double v : z.h) s += std::abs(v);
      return reg_.theta * s;
    }
    case RegKind::l2sq_h: return reg_.theta * norm_sq(z.h);
  }
  return 0.0;
}

double DeconvProblem::objective_psi(const Point& z) const {
  return loss_F(z) + reg_value(z);
}

bool DeconvProblem::in_constraint(const Point& z) const {
  if (constraint_.h_nonneg())
    for (double v : z.h)
      if (v < 0.0) return false;
  if (constraint_.x_nonneg())
    for (double v : z.x)
      if (v < 0.0) return false;
  return true;
}

Point DeconvProblem::project_constraint(Point z) const {
  if (constraint_.h_nonneg())
    for (double& v : z.h) v = std::max(v, 0.0);
  if (constraint_.x_nonneg())
    for (double& v : z.x) v = std::max(v, 0.0);
  return z;
}

}  // namespace bdeconv
