#pragma once

#include <string>

#include "bdeconv/operators.hpp"
#include "bdeconv/types.hpp"

namespace bdeconv {

enum class RegKind { none, l1_h, l2sq_h };

RegKind reg_kind_from_string(const std::string& s);
std::string to_string(RegKind k);

/// Regularizer G(h, x) applied to the filter block: theta * |h|_1,
/// theta * |h|_2^2, or nothing.
struct RegularizerSpec {
  RegKind kind = RegKind::none;
  double theta = 0.0;
};

enum class ConstraintKind { free_space, nonneg_both, nonneg_h };

ConstraintKind constraint_from_string(const std::string& s);
std::string to_string(ConstraintKind k);

struct ConstraintSpec {
  ConstraintKind kind = ConstraintKind::free_space;
  bool h_nonneg() const {
    return kind == ConstraintKind::nonneg_both || kind == ConstraintKind::nonneg_h;
  }
  bool x_nonneg() const { return kind == ConstraintKind::nonneg_both; }
};

/// Operator images of a point, shared between the loss, the DC parts, and
/// their gradients so each iteration pays for two forward applies only.
struct PointEval {
  CplxVec bh;  // B h
  CplxVec ax;  // A x
};

/// The deconvolution objective: squared Fourier-domain model error
///   F(h, x) = 1/2 |Bh .* conj(Ax) - y|^2,
/// its convex-minus-convex split F = F1 - F2, the regularizer G, and the
/// relative-smoothness constant for the quartic kernel geometry.
class DeconvProblem {
 public:
  DeconvProblem(StructuredOperator opB, StructuredOperator opA, CplxVec y,
                RegularizerSpec reg, ConstraintSpec constraint);

  const StructuredOperator& opB() const { return opB_; }
  const StructuredOperator& opA() const { return opA_; }
  const CplxVec& y() const { return y_; }
  const RegularizerSpec& reg() const { return reg_; }
  const ConstraintSpec& constraint() const { return constraint_; }

  std::size_t d1() const { return opB_.input_dim(); }
  std::size_t d2() const { return opA_.input_dim(); }
  std::size_t m() const { return y_.size(); }

  const RealVec& b_row_norms_sq() const { return b_rows_sq_; }
  const RealVec& a_row_norms_sq() const { return a_rows_sq_; }

  /// Smallest L certified by the smoothness-adaptability bound:
  /// sum_j (3|b_j|^4 + 3|a_j|^4 + |b_j|^2 |a_j|^2 + |y_j|^2 |b_j|^2 + |a_j|^2).
  double smad_bound_L() const { return smad_L_; }

  PointEval eval(const Point& z) const;

  double loss_F(const PointEval& e) const;
  double f1_value(const PointEval& e) const;
  double f2_value(const PointEval& e) const;
  Point grad_f1(const PointEval& e) const;
  Point grad_f2(const PointEval& e) const;

  /// Block gradients of the plain loss F, from the model residual directly.
  /// Equal to the respective blocks of grad_f1 - grad_f2.
  RealVec grad_F_h(const PointEval& e) const;
  RealVec grad_F_x(const PointEval& e) const;

  double loss_F(const Point& z) const { return loss_F(eval(z)); }
  double f1_value(const Point& z) const { return f1_value(eval(z)); }
  double f2_value(const Point& z) const { return f2_value(eval(z)); }
  Point grad_f1(const Point& z) const { return grad_f1(eval(z)); }
  Point grad_f2(const Point& z) const { return grad_f2(eval(z)); }

  double reg_value(const Point& z) const;
  double objective_psi(const Point& z) const;
  double objective_psi(const Point& z, const PointEval& e) const {
    return loss_F(e) + reg_value(z);
  }

  /// Membership in the closed constraint set.
  bool in_constraint(const Point& z) const;
  /// Componentwise projection onto the closed constraint set.
  Point project_constraint(Point z) const;

 private:
  StructuredOperator opB_, opA_;
  CplxVec y_;
  RegularizerSpec reg_;
  ConstraintSpec constraint_;
  RealVec b_rows_sq_, a_rows_sq_;
  RealVec y_abs_sq_;
  double norm_y_sq_ = 0.0;
  double smad_L_ = 0.0;
};

}  // namespace bdeconv
