#include "bdeconv/solvers.hpp"

#include <chrono>
#include <cmath>

#include "bdeconv/bregman.hpp"
#include "bdeconv/prox.hpp"
#include "bdeconv/rng.hpp"

namespace bdeconv {

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "bpdca") return Algorithm::bpdca;
  if (s == "bpdcae") return Algorithm::bpdcae;
  if (s == "fista") return Algorithm::fista;
  if (s == "am") return Algorithm::am;
  throw std::invalid_argument("unknown algorithm: " + s);
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::bpdca: return "bpdca";
    case Algorithm::bpdcae: return "bpdcae";
    case Algorithm::fista: return "fista";
    case Algorithm::am: return "am";
  }
  return "?";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::max_iters: return "max_iters";
    case Termination::stationarity: return "stationarity";
    case Termination::aborted: return "aborted";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double safe_cossim(const RealVec& a, const RealVec& b) {
  const double na = std::sqrt(norm_sq(a)), nb = std::sqrt(norm_sq(b));
  if (na == 0.0 || nb == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return dot(a, b) / (na * nb);
}

struct Tracer {
  const Point* gt;
  Clock::time_point start = Clock::now();

  IterationRecord make(int iter, double psi, double loss, const Point& z,
                       bool restarted, double step_size) const {
    IterationRecord rec;
    rec.iter = iter;
    rec.psi = psi;
    rec.loss = loss;
    rec.restarted = restarted;
    rec.step_size = step_size;
    rec.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (gt) {
      rec.cossim_h = safe_cossim(z.h, gt->h);
      rec.cossim_x = safe_cossim(z.x, gt->x);
    }
    return rec;
  }
};

// Linear coefficient of the Bregman DC subproblem:
// lambda * (grad F1(anchor-side) - grad F2(z-side)) - grad H(anchor).
Point dc_linear_coeff(double lambda, const Point& g1, const Point& g2,
                      const Point& anchor) {
  Point g = g1 - g2;
  scale(g, lambda);
  const Point kg = kernel_grad(anchor);
  axpy(-1.0, kg, g);
  return g;
}

double residual_with_grad(const DeconvProblem& p, const Point& z,
                          const Point& grad_f) {
  const double theta = p.reg().theta;
  const RegKind kind = p.reg().kind;
  const bool h_nn = p.constraint().h_nonneg();
  const bool x_nn = p.constraint().x_nonneg();
  const double inf = std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (std::size_t i = 0; i < z.h.size(); ++i) {
    double lo = grad_f.h[i], hi = grad_f.h[i];
    if (kind == RegKind::l1_h) {
      if (z.h[i] != 0.0) {
        const double s = theta * (z.h[i] > 0.0 ? 1.0 : -1.0);
        lo += s;
        hi += s;
      } else {
        lo -= theta;
        hi += theta;
      }
    } else if (kind == RegKind::l2sq_h) {
      lo += 2.0 * theta * z.h[i];
      hi = lo;
    }
    if (h_nn && z.h[i] == 0.0) lo = -inf;
    const double r = lo > 0.0 ? lo : (hi < 0.0 ? -hi : 0.0);
    acc += r * r;
  }
  for (std::size_t i = 0; i < z.x.size(); ++i) {
    double lo = grad_f.x[i], hi = grad_f.x[i];
    if (x_nn && z.x[i] == 0.0) lo = -inf;
    const double r = lo > 0.0 ? lo : (hi < 0.0 ? -hi : 0.0);
    acc += r * r;
  }
  return std::sqrt(acc);
}

double resolve_tolerance(const SolverConfig& cfg, double psi0) {
  if (cfg.tolerance > 0.0) return cfg.tolerance;
  if (cfg.tolerance < 0.0) return -1.0;  // disabled
  return 1e-9 * (1.0 + std::abs(psi0));
}

double resolve_lambda(const DeconvProblem& p, const SolverConfig& cfg) {
  const double L = p.smad_bound_L();
  if (L <= 0.0) throw std::invalid_argument("smad bound L must be positive");
  const double lambda = cfg.lambda > 0.0 ? cfg.lambda : 0.99 / L;
  if (lambda * L >= 1.0)
    throw std::invalid_argument("lambda * L must be < 1 for the Bregman solvers");
  return lambda;
}

}  // namespace

RunResult run_bpdca(const DeconvProblem& p, const SolverConfig& cfg,
                    const Point& z0, const Point* ground_truth) {
  if (!p.in_constraint(z0))
    throw std::invalid_argument("run_bpdca: z0 outside the constraint set");
  const double lambda = resolve_lambda(p, cfg);
  const double lam_theta = lambda * p.reg().theta;

  RunResult res;
  res.lambda_used = lambda;
  Tracer tracer{ground_truth};
  Point z = z0;
  PointEval ev = p.eval(z);
  double loss = p.loss_F(ev);
  double psi = loss + p.reg_value(z);
  const double tol = resolve_tolerance(cfg, psi);
  res.trace.push_back(tracer.make(0, psi, loss, z, false, lambda));

  for (int k = 0; k < cfg.max_iters; ++k) {
    const Point g1 = p.grad_f1(ev);
    const Point g2 = p.grad_f2(ev);
    if (tol >= 0.0 && residual_with_grad(p, z, g1 - g2) <= tol) {
      res.termination = Termination::stationarity;
      res.z = std::move(z);
      return res;
    }
    SubproblemInput inp{dc_linear_coeff(lambda, g1, g2, z), lam_theta,
                        p.reg().kind, p.constraint()};
    Point z_next = bregman_dc_step(inp);
    PointEval ev_next = p.eval(z_next);
    const double loss_next = p.loss_F(ev_next);
    const double psi_next = loss_next + p.reg_value(z_next);
    if (!std::isfinite(psi_next)) {
      res.termination = Termination::aborted;
      res.message = "non-finite objective at iteration " + std::to_string(k + 1);
      res.z = std::move(z);
      return res;
    }
    z = std::move(z_next);
    ev = std::move(ev_next);
    loss = loss_next;
    psi = psi_next;
    res.trace.push_back(tracer.make(k + 1, psi, loss, z, false, lambda));
  }
  res.termination = Termination::max_iters;
  res.z = std::move(z);
  return res;
}

RunResult run_bpdcae(const DeconvProblem& p, const SolverConfig& cfg,
                     const Point& z0, const Point* ground_truth) {
  if (!p.in_constraint(z0))
    throw std::invalid_argument("run_bpdcae: z0 outside the constraint set");
  if (cfg.restart_rho < 0.0 || cfg.restart_rho >= 1.0)
    throw std::invalid_argument("restart_rho must lie in [0, 1)");
  if (cfg.restart_period < 1)
    throw std::invalid_argument("restart_period must be >= 1");
  const double lambda = resolve_lambda(p, cfg);
  const double lam_theta = lambda * p.reg().theta;

  RunResult res;
  res.lambda_used = lambda;
  Tracer tracer{ground_truth};
  Point z_prev = z0;
  Point z = z0;
  PointEval ev_z = p.eval(z);
  double loss = p.loss_F(ev_z);
  double psi = loss + p.reg_value(z);
  const double tol = resolve_tolerance(cfg, psi);
  res.trace.push_back(tracer.make(0, psi, loss, z, false, lambda));
  double t_prev = 1.0, t_cur = 1.0;

  for (int k = 0; k < cfg.max_iters; ++k) {
    const double beta = (t_prev - 1.0) / t_cur;
    Point w = z;
    if (beta != 0.0) {
      for (std::size_t i = 0; i < w.h.size(); ++i)
        w.h[i] = z.h[i] + beta * (z.h[i] - z_prev.h[i]);
      for (std::size_t i = 0; i < w.x.size(); ++i)
        w.x[i] = z.x[i] + beta * (z.x[i] - z_prev.x[i]);
    }
    bool restarted = false;
    if ((k > 0 && k % cfg.restart_period == 0) || !p.in_constraint(w) ||
        bregman_distance(z, w) > cfg.restart_rho * bregman_distance(z_prev, z)) {
      t_prev = t_cur = 1.0;
      w = z;
      restarted = true;
      ++res.restarts;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_cur * t_cur));
    const bool w_is_z = restarted || beta == 0.0;

    const PointEval ev_w = w_is_z ? ev_z : p.eval(w);
    const Point g1w = p.grad_f1(ev_w);
    const Point g2z = p.grad_f2(ev_z);
    if (tol >= 0.0) {
      // The residual needs grad F at z; when w == z it is already in hand,
      // otherwise only probe once the iterates have nearly stopped moving.
      bool check = w_is_z;
      Point grad_f;
      if (w_is_z) {
        grad_f = g1w - g2z;
      } else {
        const double move = std::sqrt(norm_sq(z - z_prev));
        if (move <= 1e-12 * (1.0 + std::sqrt(norm_sq(z)))) {
          grad_f = p.grad_f1(ev_z) - g2z;
          check = true;
        }
      }
      if (check && residual_with_grad(p, z, grad_f) <= tol) {
        res.termination = Termination::stationarity;
        res.z = std::move(z);
        return res;
      }
    }
    SubproblemInput inp{dc_linear_coeff(lambda, g1w, g2z, w), lam_theta,
                        p.reg().kind, p.constraint()};
    Point z_next = bregman_dc_step(inp);
    PointEval ev_next = p.eval(z_next);
    const double loss_next = p.loss_F(ev_next);
    const double psi_next = loss_next + p.reg_value(z_next);
    if (!std::isfinite(psi_next)) {
      res.termination = Termination::aborted;
      res.message = "non-finite objective at iteration " + std::to_string(k + 1);
      res.z = std::move(z);
      return res;
    }
    z_prev = std::move(z);
    z = std::move(z_next);
    ev_z = std::move(ev_next);
    loss = loss_next;
    psi = psi_next;
    t_prev = t_cur;
    t_cur = t_next;
    res.trace.push_back(tracer.make(k + 1, psi, loss, z, restarted, lambda));
  }
  res.termination = Termination::max_iters;
  res.z = std::move(z);
  return res;
}

RunResult run_fista(const DeconvProblem& p, const SolverConfig& cfg,
                    const Point& z0, const Point* ground_truth) {
  if (cfg.backtrack_eta <= 1.0)
    throw std::invalid_argument("backtrack_eta must be > 1");
  double lips = cfg.backtrack_l0 > 0.0 ? cfg.backtrack_l0 : 1.0;

  RunResult res;
  Tracer tracer{ground_truth};
  Point z = z0;
  Point w = z0;
  PointEval ev_z = p.eval(z);
  double loss = p.loss_F(ev_z);
  double psi = loss + p.reg_value(z);
  const double tol = resolve_tolerance(cfg, psi);
  res.lambda_used = 1.0 / lips;
  res.trace.push_back(tracer.make(0, psi, loss, z, false, 1.0 / lips));
  double t_cur = 1.0;

  for (int k = 0; k < cfg.max_iters; ++k) {
    const bool w_is_z = k == 0;
    const PointEval ev_w = w_is_z ? ev_z : p.eval(w);
    const double f_w = p.loss_F(ev_w);
    const Point grad_w(p.grad_F_h(ev_w), p.grad_F_x(ev_w));

    Point cand;
    PointEval ev_c;
    double f_c = 0.0;
    bool accepted = false;
    for (int bt = 0; bt <= 60; ++bt) {
      const double step = 1.0 / lips;
      Point q = w;
      axpy(-step, grad_w, q);
      cand = euclidean_prox(q, p.reg().theta * step, p.constraint(), p.reg());
      ev_c = p.eval(cand);
      f_c = p.loss_F(ev_c);
      const Point d = cand - w;
      const double bound =
          f_w + dot(grad_w, d) + 0.5 * lips * norm_sq(d) + 1e-12 * (1.0 + std::abs(f_w));
      if (f_c <= bound) {
        accepted = true;
        break;
      }
      lips *= cfg.backtrack_eta;
    }
    if (!accepted) {
      res.termination = Termination::aborted;
      res.message = "backtracking exceeded 60 increases at iteration " +
                    std::to_string(k + 1);
      res.z = std::move(z);
      return res;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_cur * t_cur));
    w = cand;
    const Point diff = cand - z;
    axpy((t_cur - 1.0) / t_next, diff, w);
    const double move = std::sqrt(norm_sq(diff));
    z = std::move(cand);
    ev_z = std::move(ev_c);
    loss = f_c;
    psi = loss + p.reg_value(z);
    if (!std::isfinite(psi)) {
      res.termination = Termination::aborted;
      res.message = "non-finite objective at iteration " + std::to_string(k + 1);
      res.z = std::move(z);
      return res;
    }
    t_cur = t_next;
    res.trace.push_back(tracer.make(k + 1, psi, loss, z, false, 1.0 / lips));
    if (tol >= 0.0 && move <= 1e-12 * (1.0 + std::sqrt(norm_sq(z)))) {
      const Point grad_z(p.grad_F_h(ev_z), p.grad_F_x(ev_z));
      if (residual_with_grad(p, z, grad_z) <= tol) {
        res.termination = Termination::stationarity;
        res.z = std::move(z);
        return res;
      }
    }
  }
  res.termination = Termination::max_iters;
  res.z = std::move(z);
  return res;
}

namespace {

// FISTA restricted to one block with the other held fixed; used by the
// alternating scheme. Returns the updated block and keeps the running
// Lipschitz estimate warm across calls.
void fista_on_block(const DeconvProblem& p, Point& z, bool h_block, int iters,
                    double eta, double& lips) {
  const CplxVec fixed = h_block ? p.opA().apply(z.x) : p.opB().apply(z.h);
  RealVec u = h_block ? z.h : z.x;
  RealVec w = u;
  double t_cur = 1.0;

  // Loss and gradient of F as a function of the active block only.
  auto eval_block = [&](const RealVec& v) {
    return h_block ? PointEval{p.opB().apply(v), fixed}
                   : PointEval{fixed, p.opA().apply(v)};
  };
  auto block_grad = [&](const PointEval& e) {
    return h_block ? p.grad_F_h(e) : p.grad_F_x(e);
  };
  auto block_prox = [&](RealVec q, double step) {
    if (h_block) {
      Point r = euclidean_prox(Point(std::move(q), {}), p.reg().theta * step,
                               p.constraint(), p.reg());
      return std::move(r.h);
    }
    Point r = euclidean_prox(Point({}, std::move(q)), 0.0, p.constraint(),
                             p.reg());
    return std::move(r.x);
  };

  for (int i = 0; i < iters; ++i) {
    const PointEval ev_w = eval_block(w);
    const double f_w = p.loss_F(ev_w);
    const RealVec g_w = block_grad(ev_w);
    RealVec cand;
    double f_c = 0.0;
    bool accepted = false;
    for (int bt = 0; bt <= 60; ++bt) {
      const double step = 1.0 / lips;
      RealVec q = w;
      axpy(-step, g_w, q);
      cand = block_prox(std::move(q), step);
      f_c = p.loss_F(eval_block(cand));
      RealVec d = cand;
      axpy(-1.0, w, d);
      const double bound =
          f_w + dot(g_w, d) + 0.5 * lips * norm_sq(d) + 1e-12 * (1.0 + std::abs(f_w));
      if (f_c <= bound) {
        accepted = true;
        break;
      }
      lips *= eta;
    }
    if (!accepted)
      throw std::runtime_error("inner FISTA backtracking exceeded 60 increases");
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_cur * t_cur));
    w = cand;
    RealVec diff = cand;
    axpy(-1.0, u, diff);
    axpy((t_cur - 1.0) / t_next, diff, w);
    u = std::move(cand);
    t_cur = t_next;
  }
  (h_block ? z.h : z.x) = std::move(u);
}

}  // namespace

RunResult run_am(const DeconvProblem& p, const SolverConfig& cfg,
                 const Point& z0, const Point* ground_truth) {
  if (cfg.inner_fista_iters < 1)
    throw std::invalid_argument("inner_fista_iters must be >= 1");
  RunResult res;
  Tracer tracer{ground_truth};
  Point z = z0;
  PointEval ev = p.eval(z);
  double loss = p.loss_F(ev);
  double psi = loss + p.reg_value(z);
  const double tol = resolve_tolerance(cfg, psi);
  res.trace.push_back(tracer.make(0, psi, loss, z, false, 0.0));
  double lips_h = cfg.backtrack_l0 > 0.0 ? cfg.backtrack_l0 : 1.0;
  double lips_x = lips_h;
  const double eta = cfg.backtrack_eta > 1.0 ? cfg.backtrack_eta : 2.0;

  for (int k = 0; k < cfg.max_iters; ++k) {
    Point before = z;
    try {
      fista_on_block(p, z, true, cfg.inner_fista_iters, eta, lips_h);
      fista_on_block(p, z, false, cfg.inner_fista_iters, eta, lips_x);
    } catch (const std::runtime_error& e) {
      res.termination = Termination::aborted;
      res.message = e.what();
      res.z = std::move(z);
      return res;
    }
    ev = p.eval(z);
    loss = p.loss_F(ev);
    psi = loss + p.reg_value(z);
    if (!std::isfinite(psi)) {
      res.termination = Termination::aborted;
      res.message = "non-finite objective at outer iteration " + std::to_string(k + 1);
      res.z = std::move(z);
      return res;
    }
    res.trace.push_back(tracer.make(k + 1, psi, loss, z, false, 0.0));
    const double move = std::sqrt(norm_sq(z - before));
    if (tol >= 0.0 && move <= 1e-12 * (1.0 + std::sqrt(norm_sq(z)))) {
      const Point grad_z(p.grad_F_h(ev), p.grad_F_x(ev));
      if (residual_with_grad(p, z, grad_z) <= tol) {
        res.termination = Termination::stationarity;
        res.z = std::move(z);
        return res;
      }
    }
  }
  res.termination = Termination::max_iters;
  res.z = std::move(z);
  return res;
}

RunResult run_solver(const DeconvProblem& p, const SolverConfig& cfg,
                     const Point& z0, const Point* ground_truth) {
  switch (cfg.algorithm) {
    case Algorithm::bpdca: return run_bpdca(p, cfg, z0, ground_truth);
    case Algorithm::bpdcae: return run_bpdcae(p, cfg, z0, ground_truth);
    case Algorithm::fista: return run_fista(p, cfg, z0, ground_truth);
    case Algorithm::am: return run_am(p, cfg, z0, ground_truth);
  }
  throw std::logic_error("unreachable");
}

SpectralInit spectral_init(const DeconvProblem& p, double tol, int max_iters) {
  if (norm_sq(p.y()) == 0.0)
    throw std::invalid_argument("spectral_init: y is identically zero");

  // M v = Re(B^H (y .* conj(A v))), M^T u = Re(A^H (y .* conj(B u))).
  auto apply_m = [&](const RealVec& v) {
    CplxVec t = p.opA().apply(v);
    for (std::size_t j = 0; j < t.size(); ++j)
      t[j] = p.y()[j] * std::conj(t[j]);
    return p.opB().adjoint_apply(t);
  };
  auto apply_mt = [&](const RealVec& u) {
    CplxVec t = p.opB().apply(u);
    for (std::size_t j = 0; j < t.size(); ++j)
      t[j] = p.y()[j] * std::conj(t[j]);
    return p.opA().adjoint_apply(t);
  };

  SpectralInit out;
  RealVec v(p.d2(), 1.0 / std::sqrt(static_cast<double>(p.d2())));
  RealVec u;
  double sigma = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    u = apply_m(v);
    const double nu = std::sqrt(norm_sq(u));
    if (nu == 0.0)
      throw std::invalid_argument("spectral_init: degenerate operator (Mv = 0)");
    scale(u, 1.0 / nu);
    RealVec v_next = apply_mt(u);
    sigma = std::sqrt(norm_sq(v_next));
    if (sigma == 0.0)
      throw std::invalid_argument("spectral_init: degenerate operator (M^T u = 0)");
    scale(v_next, 1.0 / sigma);
    RealVec diff = v_next;
    axpy(-1.0, v, diff);
    v = std::move(v_next);
    if (std::sqrt(norm_sq(diff)) <= tol) {
      out.converged = true;
      break;
    }
  }
  u = apply_m(v);
  const double nu = std::sqrt(norm_sq(u));
  if (nu == 0.0)
    throw std::invalid_argument("spectral_init: degenerate operator (Mv = 0)");
  scale(u, 1.0 / nu);

  double s = 0.0;
  for (double a : u) s += a;
  for (double a : v) s += a;
  if (s < 0.0) {
    scale(u, -1.0);
    scale(v, -1.0);
  }
  out.z = Point(std::move(u), std::move(v));
  out.sigma = sigma;
  return out;
}

Point uniform_random_init(const DeconvProblem& p, std::uint64_t seed,
                          double lo, double hi) {
  Rng rng(seed);
  Point z = Point::zeros(p.d1(), p.d2());
  for (double& v : z.h) v = rng.uniform(lo, hi);
  for (double& v : z.x) v = rng.uniform(lo, hi);
  return z;
}

double stationarity_residual(const DeconvProblem& p, const Point& z) {
  const PointEval ev = p.eval(z);
  const Point grad_f(p.grad_F_h(ev), p.grad_F_x(ev));
  return residual_with_grad(p, z, grad_f);
}

}  // namespace bdeconv
