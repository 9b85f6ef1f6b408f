#pragma once

// Brute-force reference implementations used only by tests. Everything here
// is deliberately slow and independent of the library's fast paths.

#include <functional>

#include "bdeconv/operators.hpp"
#include "bdeconv/prox.hpp"
#include "bdeconv/types.hpp"

namespace bdeconv::oracle {

/// Explicit matrix of a structured operator, column j = apply(e_j).
CplxMatrix densify(const StructuredOperator& op);

CplxVec dense_apply(const CplxMatrix& m, const RealVec& v);
RealVec dense_adjoint_real(const CplxMatrix& m, const CplxVec& w);
RealVec dense_row_norms_sq(const CplxMatrix& m);

/// Central-difference gradient of a scalar function of a Point.
Point fd_gradient(const std::function<double(const Point&)>& fun,
                  const Point& z, double step);

/// Central-difference quadratic form <w, hess f(z) w>.
double fd_quadratic_form(const std::function<double(const Point&)>& fun,
                         const Point& z, const Point& w, double step);

/// O(m^2) direct-sum circular convolution on a 1-D torus or a grid.
RealVec direct_convolve(const RealVec& f, const RealVec& g);
RealVec direct_convolve(const RealVec& f, const RealVec& g, Grid grid);

/// O(m^2) unitary DFT by explicit summation.
CplxVec slow_dft_unitary(const CplxVec& v, Grid grid);

/// Value of the Bregman subproblem objective
///   <g_lin, z> + lambda_theta * reg(h) + H(z)
/// (infinite outside the constraint set).
double subproblem_objective(const SubproblemInput& inp, const Point& z);

/// Projected proximal-gradient minimization of the subproblem, independent
/// of the closed-form path. Dimensions are expected to be tiny.
Point subproblem_oracle(const SubproblemInput& inp);

/// Bisection solve of c*t^3 + t - 1 = 0 on [0, 1].
double cubic_root_bisect(double c);

struct SvdTriple {
  CplxVec u;
  double sigma = 0.0;
  CplxVec v;
};

/// Leading singular triple of a dense complex matrix (Eigen's JacobiSVD).
SvdTriple dense_top_singular(const CplxMatrix& m);

}  // namespace bdeconv::oracle
