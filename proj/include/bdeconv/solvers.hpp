#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "bdeconv/model.hpp"
#include "bdeconv/types.hpp"

namespace bdeconv {

enum class Algorithm { bpdca, bpdcae, fista, am };

Algorithm algorithm_from_string(const std::string& s);
std::string to_string(Algorithm a);

struct SolverConfig {
  Algorithm algorithm = Algorithm::bpdcae;
  /// Step parameter; must satisfy lambda * L < 1 for the Bregman solvers.
  /// Nonpositive selects the default 0.99 / L.
  double lambda = 0.0;
  /// Extrapolation restart threshold rho in [0, 1).
  double restart_rho = 0.99;
  /// Scheduled restart period N (every N-th iteration).
  int restart_period = 200;
  int max_iters = 3000;
  /// Inner FISTA steps per block for alternating minimization.
  int inner_fista_iters = 10;
  /// Backtracking multiplier (> 1) and initial Lipschitz guess for FISTA.
  double backtrack_eta = 2.0;
  double backtrack_l0 = 1.0;
  /// Stationarity threshold. Zero selects 1e-9 * (1 + Psi(z0)); a negative
  /// value disables the stationarity stop (iteration cap only).
  double tolerance = 0.0;
};

struct IterationRecord {
  int iter = 0;
  double psi = 0.0;
  double loss = 0.0;
  double cossim_h = std::numeric_limits<double>::quiet_NaN();
  double cossim_x = std::numeric_limits<double>::quiet_NaN();
  bool restarted = false;
  double step_size = 0.0;
  double seconds = 0.0;
};

enum class Termination { max_iters, stationarity, aborted };

std::string to_string(Termination t);

struct RunResult {
  Point z;
  std::vector<IterationRecord> trace;
  Termination termination = Termination::max_iters;
  std::string message;
  int restarts = 0;
  double lambda_used = 0.0;
};

struct SpectralInit {
  Point z;        // unit left/right singular vectors
  double sigma = 0.0;
  bool converged = false;
};

/// Leading singular pair of B^H diag(y) conj(A) by matrix-free power
/// iteration; signs are chosen so the combined entry sum is nonnegative.
/// Throws if y is identically zero.
SpectralInit spectral_init(const DeconvProblem& p, double tol = 1e-8,
                           int max_iters = 200);

/// h and x drawn componentwise from the uniform distribution on [lo, hi].
Point uniform_random_init(const DeconvProblem& p, std::uint64_t seed,
                          double lo = 0.0, double hi = 0.1);

RunResult run_bpdca(const DeconvProblem& p, const SolverConfig& cfg,
                    const Point& z0, const Point* ground_truth = nullptr);
RunResult run_bpdcae(const DeconvProblem& p, const SolverConfig& cfg,
                     const Point& z0, const Point* ground_truth = nullptr);
RunResult run_fista(const DeconvProblem& p, const SolverConfig& cfg,
                    const Point& z0, const Point* ground_truth = nullptr);
RunResult run_am(const DeconvProblem& p, const SolverConfig& cfg,
                 const Point& z0, const Point* ground_truth = nullptr);

/// Dispatch on cfg.algorithm.
RunResult run_solver(const DeconvProblem& p, const SolverConfig& cfg,
                     const Point& z0, const Point* ground_truth = nullptr);

/// Euclidean norm of the minimum-norm element of
/// grad F(z) + subdiff G(z) + normal cone of the constraint set,
/// evaluated componentwise via subdifferential intervals.
double stationarity_residual(const DeconvProblem& p, const Point& z);

}  // namespace bdeconv
