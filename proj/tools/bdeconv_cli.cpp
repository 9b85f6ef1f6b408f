// Command-line front end for the blind-deconvolution experiment harness.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bdeconv/bregman.hpp"
#include "bdeconv/fft.hpp"
#include "bdeconv/harness.hpp"
#include "bdeconv/io.hpp"
#include "bdeconv/operators.hpp"
#include "bdeconv/prox.hpp"
#include "bdeconv/rng.hpp"

namespace {

using namespace bdeconv;

struct CliOverrides {
  std::string config_path;
  std::string out_dir;
  std::string reg_kind;
  std::string init_kind;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int max_iters = 0;
  double lambda = 0.0;
  double rho = -1.0;
  int restart_period = 0;
  double theta = -1.0;
  double noise_scale = 0.0;
};

ExperimentConfig resolve_config(const CliOverrides& o) {
  ExperimentConfig cfg = o.config_path.empty()
                             ? default_experiment_config()
                             : load_experiment_config(o.config_path);
  if (!o.out_dir.empty()) cfg.output_dir = o.out_dir;
  if (!o.reg_kind.empty()) cfg.reg.kind = reg_kind_from_string(o.reg_kind);
  if (!o.init_kind.empty()) cfg.init_kind = o.init_kind;
  if (o.seed_set) {
    cfg.init_seed = o.seed;
    cfg.noise_seed = o.seed;
  }
  if (o.theta >= 0.0) cfg.reg.theta = o.theta;
  if (o.noise_scale > 0.0) {
    cfg.noise_type = "poisson";
    cfg.noise_intensity_scale = o.noise_scale;
  }
  for (SolverConfig& s : cfg.solvers) {
    if (o.max_iters > 0) s.max_iters = o.max_iters;
    if (o.lambda > 0.0) s.lambda = o.lambda;
    if (o.rho >= 0.0) s.restart_rho = o.rho;
    if (o.restart_period > 0) s.restart_period = o.restart_period;
  }
  return cfg;
}

void add_common_flags(CLI::App* app, CliOverrides& o) {
  app->add_option("--config", o.config_path, "JSON experiment config");
  app->add_option("--out", o.out_dir, "output directory");
  app->add_option("--seed", o.seed, "seed for noise and random init")
      ->each([&](const std::string&) { o.seed_set = true; });
  app->add_option("--max-iters", o.max_iters, "iteration cap for every solver");
  app->add_option("--lambda", o.lambda, "explicit step parameter lambda");
  app->add_option("--rho", o.rho, "extrapolation restart threshold");
  app->add_option("--restart-period", o.restart_period, "scheduled restart period");
  app->add_option("--theta", o.theta, "regularization weight");
  app->add_option("--reg", o.reg_kind, "regularizer: l1 | l2 | none");
  app->add_option("--init", o.init_kind, "initialization: spectral | random");
  app->add_option("--noise-scale", o.noise_scale,
                  "Poisson intensity scale (enables Poisson noise)");
}

int cmd_generate(const CliOverrides& o) {
  ExperimentConfig cfg = resolve_config(o);
  GeneratedProblem gen = generate_problem(cfg);
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  const std::string dir = cfg.output_dir + "/";
  const std::size_t side = cfg.image_side;
  write_pgm_normalized(dir + "kernel_true.pgm", gen.kernel, side, side);
  write_pgm_normalized(dir + "image_true.pgm", gen.image, side, side);
  write_pgm_normalized(dir + "blurred.pgm", gen.blurred, side, side);

  nlohmann::json j;
  j["m"] = gen.problem.m();
  j["d1"] = gen.problem.d1();
  j["d2"] = gen.problem.d2();
  j["smad_L"] = gen.problem.smad_bound_L();
  j["psi_ground_truth"] = gen.psi_gt;
  j["noise_std"] = gen.noise_std;
  j["h_true"] = gen.truth.h;
  j["x_true"] = gen.truth.x;
  j["blurred"] = gen.blurred;
  std::ofstream out(dir + "problem.json");
  out << j.dump() << "\n";
  save_experiment_config(cfg, dir + "config.json");
  std::printf("wrote problem artifacts to %s (m=%zu d1=%zu d2=%zu L=%.6g)\n",
              cfg.output_dir.c_str(), gen.problem.m(), gen.problem.d1(),
              gen.problem.d2(), gen.problem.smad_bound_L());
  return 0;
}

int run_and_report(const ExperimentConfig& cfg) {
  ComparisonResult result = run_comparison(cfg);
  std::printf("%-8s %-12s %14s %14s %10s %10s %8s\n", "solver", "status", "psi",
              "log10|psi-gap|", "cossim_h", "cossim_x", "iters");
  bool all_ok = true;
  for (const SolverSummary& s : result.summaries) {
    all_ok = all_ok && s.ok;
    std::printf("%-8s %-12s %14.6e %14.4f %10.6f %10.6f %8d\n",
                s.algorithm.c_str(), s.termination.c_str(), s.final_psi,
                s.log10_psi_gap, s.cossim_h, s.cossim_x, s.iterations);
    if (!s.ok && !s.message.empty())
      std::printf("         aborted: %s\n", s.message.c_str());
  }
  std::printf("artifacts in %s\n", cfg.output_dir.c_str());
  return all_ok ? 0 : 1;
}

int cmd_solve(const CliOverrides& o, const std::string& solver) {
  ExperimentConfig cfg = resolve_config(o);
  const Algorithm algo = algorithm_from_string(solver);
  std::vector<SolverConfig> picked;
  for (const SolverConfig& s : cfg.solvers)
    if (s.algorithm == algo) picked.push_back(s);
  if (picked.empty()) {
    SolverConfig s;
    s.algorithm = algo;
    if (algo == Algorithm::am) s.max_iters = 300;
    picked.push_back(s);
  }
  cfg.solvers = {picked.front()};
  return run_and_report(cfg);
}

int cmd_compare(const CliOverrides& o) { return run_and_report(resolve_config(o)); }

// Fast self-contained invariant checks over the library primitives.
int cmd_check() {
  int failures = 0;
  auto report = [&](const char* name, bool ok, double err) {
    std::printf("[%s] %-42s max_err=%.3e\n", ok ? "PASS" : "FAIL", name, err);
    if (!ok) ++failures;
  };
  Rng rng(12345);
  auto rand_real = [&](std::size_t n) {
    RealVec v(n);
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    return v;
  };
  auto rand_cplx = [&](std::size_t n) {
    CplxVec v(n);
    for (auto& x : v) x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return v;
  };

  // Adjoint identity Re<Av, w> = <v, A^* w> for each operator kind.
  {
    double err = 0.0;
    std::vector<StructuredOperator> ops;
    ops.push_back(StructuredOperator::fourier_embedding(EmbeddingSpec::top_left(3, 8)));
    ops.push_back(StructuredOperator::fourier_synthesis(
        WaveletSpec{WaveletFamily::haar, 2, 1}, Grid::square(8)));
    ops.push_back(StructuredOperator::fourier_synthesis(
        WaveletSpec{WaveletFamily::meyer_approx, 1, 1}, Grid::square(8)));
    CplxMatrix mat(6, 4);
    for (auto& v : mat.data) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    ops.push_back(StructuredOperator::dense(mat));
    for (const auto& op : ops)
      for (int t = 0; t < 20; ++t) {
        const RealVec v = rand_real(op.input_dim());
        const CplxVec w = rand_cplx(op.output_dim());
        std::complex<double> ip = 0.0;
        const CplxVec av = op.apply(v);
        for (std::size_t j = 0; j < w.size(); ++j) ip += std::conj(av[j]) * w[j];
        const double lhs = ip.real();
        const double rhs = dot(v, op.adjoint_apply(w));
        err = std::max(err, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
      }
    report("operator adjoint identity", err <= 1e-10, err);
  }

  // Convolution theorem under the unitary DFT, 1-D and 2-D.
  {
    double err = 0.0;
    for (int t = 0; t < 10; ++t) {
      const RealVec f = rand_real(16), g = rand_real(16);
      const RealVec c = circular_convolve(f, g);
      const CplxVec lhs = dft_unitary(to_complex(c));
      const CplxVec Ff = dft_unitary(to_complex(f));
      const CplxVec Fg = dft_unitary(to_complex(g));
      for (std::size_t j = 0; j < lhs.size(); ++j)
        err = std::max(err, std::abs(lhs[j] - 4.0 * Ff[j] * Fg[j]));
      const RealVec f2 = rand_real(16), g2 = rand_real(16);
      const RealVec c2 = circular_convolve(f2, g2, Grid::square(4));
      const CplxVec lhs2 = dft2_unitary(to_complex(c2), 4, 4);
      const CplxVec F2 = dft2_unitary(to_complex(f2), 4, 4);
      const CplxVec G2 = dft2_unitary(to_complex(g2), 4, 4);
      for (std::size_t j = 0; j < lhs2.size(); ++j)
        err = std::max(err, std::abs(lhs2[j] - 4.0 * F2[j] * G2[j]));
    }
    report("convolution theorem (sqrt(m) factor)", err <= 1e-10, err);
  }

  // Wavelet orthogonality: inverse(forward) == identity.
  {
    double err = 0.0;
    for (WaveletFamily fam : {WaveletFamily::haar, WaveletFamily::meyer_approx}) {
      OrthoWavelet w(WaveletSpec{fam, 2, 1}, Grid::square(16));
      for (int t = 0; t < 10; ++t) {
        const RealVec img = rand_real(256);
        const RealVec back = w.inverse(w.forward(img));
        for (std::size_t i = 0; i < img.size(); ++i)
          err = std::max(err, std::abs(back[i] - img[i]));
      }
    }
    report("wavelet orthogonality (round trip)", err <= 1e-10, err);
  }

  // DC identity F = F1 - F2 on random dense instances.
  {
    double err = 0.0;
    for (int t = 0; t < 20; ++t) {
      CplxMatrix B(8, 3), A(8, 5);
      for (auto& v : B.data) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      for (auto& v : A.data) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      DeconvProblem p(StructuredOperator::dense(B), StructuredOperator::dense(A),
                      rand_cplx(8), RegularizerSpec{}, ConstraintSpec{});
      const Point z(rand_real(3), rand_real(5));
      const PointEval e = p.eval(z);
      const double f = p.loss_F(e);
      const double dc = p.f1_value(e) - p.f2_value(e);
      err = std::max(err, std::abs(f - dc) / (1.0 + std::abs(f)));
    }
    report("DC identity F = F1 - F2", err <= 1e-10, err);
  }

  // Cubic root residuals across magnitudes.
  {
    double err = 0.0;
    for (double c : {0.0, 1e-6, 1e-3, 1.0, 1e3, 1e9}) {
      const double t = positive_cubic_root(c);
      err = std::max(err, std::abs(c * t * t * t + t - 1.0));
    }
    report("positive cubic root residual", err <= 1e-12, err);
  }

  // Bregman distance nonnegativity and inverse-Hessian identity.
  {
    double err = 0.0, neg = 0.0;
    for (int t = 0; t < 50; ++t) {
      const Point z(rand_real(4), rand_real(6));
      const Point w(rand_real(4), rand_real(6));
      neg = std::min(neg, bregman_distance(z, w));
      const Point back = hessian_apply(z, hessian_inverse_apply(z, w));
      const Point diff = back - w;
      err = std::max(err, std::sqrt(norm_sq(diff)));
    }
    report("Bregman distance nonnegative", neg >= -1e-12, -neg);
    report("Hessian inverse identity", err <= 1e-10, err);
  }

  std::printf(failures == 0 ? "all checks passed\n" : "%d check(s) FAILED\n",
              failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blind deconvolution via Bregman proximal DC solvers"};
  app.require_subcommand(1);

  CliOverrides o;
  std::string solver_name = "bpdcae";

  CLI::App* generate = app.add_subcommand("generate", "write a synthetic problem to a directory");
  add_common_flags(generate, o);
  CLI::App* solve = app.add_subcommand("solve", "run one solver");
  add_common_flags(solve, o);
  solve->add_option("--solver", solver_name, "bpdca | bpdcae | fista | am");
  CLI::App* compare = app.add_subcommand("compare", "run all configured solvers");
  add_common_flags(compare, o);
  app.add_subcommand("check", "run the library invariant suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(o);
    if (solve->parsed()) return cmd_solve(o, solver_name);
    if (compare->parsed()) return cmd_compare(o);
    return cmd_check();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
