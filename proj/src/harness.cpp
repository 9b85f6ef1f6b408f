#include "bdeconv/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "bdeconv/fft.hpp"
#include "bdeconv/io.hpp"
#include "bdeconv/operators.hpp"
#include "bdeconv/rng.hpp"

namespace bdeconv {

using nlohmann::json;

namespace {

SolverConfig solver_config_from_json(const json& j) {
  SolverConfig cfg;
  cfg.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
  cfg.lambda = j.value("lambda", 0.0);
  cfg.restart_rho = j.value("rho", cfg.restart_rho);
  cfg.restart_period = j.value("restart_period", cfg.restart_period);
  cfg.max_iters = j.value("max_iters", cfg.max_iters);
  cfg.inner_fista_iters = j.value("inner_fista_iters", cfg.inner_fista_iters);
  cfg.backtrack_eta = j.value("backtrack_eta", cfg.backtrack_eta);
  cfg.backtrack_l0 = j.value("backtrack_l0", cfg.backtrack_l0);
  cfg.tolerance = j.value("tolerance", cfg.tolerance);
  return cfg;
}

json solver_config_to_json(const SolverConfig& cfg) {
  json j;
  j["algorithm"] = to_string(cfg.algorithm);
  j["lambda"] = cfg.lambda;
  j["rho"] = cfg.restart_rho;
  j["restart_period"] = cfg.restart_period;
  j["max_iters"] = cfg.max_iters;
  j["inner_fista_iters"] = cfg.inner_fista_iters;
  j["backtrack_eta"] = cfg.backtrack_eta;
  j["backtrack_l0"] = cfg.backtrack_l0;
  j["tolerance"] = cfg.tolerance;
  return j;
}

RealVec make_blur_kernel(const ExperimentConfig& cfg) {
  const std::size_t k = cfg.kernel_side;
  if (k == 0) throw std::invalid_argument("kernel_side must be >= 1");
  RealVec kernel(k * k, 0.0);
  if (cfg.blur_type == "diagonal_line") {
    for (std::size_t i = 0; i < k; ++i) kernel[i * k + i] = 1.0;
  } else if (cfg.blur_type == "gaussian") {
    const double c = 0.5 * static_cast<double>(k - 1);
    const double s2 = 2.0 * cfg.gaussian_sigma * cfg.gaussian_sigma;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t q = 0; q < k; ++q) {
        const double dr = static_cast<double>(r) - c;
        const double dq = static_cast<double>(q) - c;
        kernel[r * k + q] = std::exp(-(dr * dr + dq * dq) / s2);
      }
  } else if (cfg.blur_type == "custom_file") {
    PgmImage img = read_pgm(cfg.kernel_path);
    if (img.rows != k || img.cols != k)
      throw std::invalid_argument("custom kernel file is not kernel_side^2");
    kernel = img.pixels;
  } else {
    throw std::invalid_argument("unknown blur_type: " + cfg.blur_type);
  }
  double sum = 0.0;
  for (double v : kernel) sum += v;
  if (sum <= 0.0) throw std::invalid_argument("blur kernel must have positive mass");
  for (double& v : kernel) v /= sum;
  return kernel;
}

}  // namespace

ExperimentConfig default_experiment_config() {
  ExperimentConfig cfg;
  SolverConfig bpdcae;
  bpdcae.algorithm = Algorithm::bpdcae;
  bpdcae.max_iters = 3000;
  SolverConfig bpdca = bpdcae;
  bpdca.algorithm = Algorithm::bpdca;
  SolverConfig fista = bpdcae;
  fista.algorithm = Algorithm::fista;
  SolverConfig am = bpdcae;
  am.algorithm = Algorithm::am;
  am.max_iters = 300;
  cfg.solvers = {bpdcae, bpdca, fista, am};
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  json j;
  in >> j;

  ExperimentConfig cfg = default_experiment_config();
  if (j.contains("image")) {
    cfg.image_source = j["image"].value("source", cfg.image_source);
    cfg.image_side = j["image"].value("side", cfg.image_side);
  }
  if (j.contains("kernel")) {
    cfg.blur_type = j["kernel"].value("type", cfg.blur_type);
    cfg.kernel_side = j["kernel"].value("side", cfg.kernel_side);
    cfg.gaussian_sigma = j["kernel"].value("sigma", cfg.gaussian_sigma);
    cfg.kernel_path = j["kernel"].value("path", cfg.kernel_path);
  }
  if (j.contains("wavelet")) {
    cfg.wavelet.family =
        wavelet_family_from_string(j["wavelet"].value("family", std::string("haar")));
    cfg.wavelet.levels = j["wavelet"].value("levels", cfg.wavelet.levels);
    cfg.wavelet.retained_subbands =
        j["wavelet"].value("retained_subbands", cfg.wavelet.retained_subbands);
  }
  if (j.contains("noise")) {
    cfg.noise_type = j["noise"].value("type", cfg.noise_type);
    cfg.noise_intensity_scale =
        j["noise"].value("intensity_scale", cfg.noise_intensity_scale);
    cfg.noise_seed = j["noise"].value("seed", cfg.noise_seed);
  }
  if (j.contains("regularizer")) {
    cfg.reg.kind =
        reg_kind_from_string(j["regularizer"].value("kind", std::string("l1")));
    cfg.reg.theta = j["regularizer"].value("theta", cfg.reg.theta);
  }
  if (j.contains("constraint"))
    cfg.constraint = constraint_from_string(j["constraint"].get<std::string>());
  if (j.contains("init")) {
    cfg.init_kind = j["init"].value("kind", cfg.init_kind);
    cfg.init_seed = j["init"].value("seed", cfg.init_seed);
  }
  if (j.contains("solvers")) {
    cfg.solvers.clear();
    for (const auto& s : j["solvers"]) cfg.solvers.push_back(solver_config_from_json(s));
  }
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  cfg.record_timing = j.value("record_timing", cfg.record_timing);
  return cfg;
}

void save_experiment_config(const ExperimentConfig& cfg, const std::string& path) {
  json j;
  j["image"] = {{"source", cfg.image_source}, {"side", cfg.image_side}};
  j["kernel"] = {{"type", cfg.blur_type},
                 {"side", cfg.kernel_side},
                 {"sigma", cfg.gaussian_sigma},
                 {"path", cfg.kernel_path}};
  j["wavelet"] = {{"family", to_string(cfg.wavelet.family)},
                  {"levels", cfg.wavelet.levels},
                  {"retained_subbands", cfg.wavelet.retained_subbands}};
  j["noise"] = {{"type", cfg.noise_type},
                {"intensity_scale", cfg.noise_intensity_scale},
                {"seed", cfg.noise_seed}};
  j["regularizer"] = {{"kind", to_string(cfg.reg.kind)}, {"theta", cfg.reg.theta}};
  j["constraint"] = to_string(cfg.constraint);
  j["init"] = {{"kind", cfg.init_kind}, {"seed", cfg.init_seed}};
  j["solvers"] = json::array();
  for (const auto& s : cfg.solvers) j["solvers"].push_back(solver_config_to_json(s));
  j["output_dir"] = cfg.output_dir;
  j["record_timing"] = cfg.record_timing;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("config: cannot write " + path);
  out << j.dump(2) << "\n";
}

RealVec builtin_image(std::size_t side) {
  const double n = static_cast<double>(side);
  const double tau = 2.0 * std::numbers::pi;
  RealVec img(side * side);
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j) {
      const double u = (static_cast<double>(i) + 0.5) / n;
      const double v = (static_cast<double>(j) + 0.5) / n;
      const double du = u - 0.30, dv = v - 0.62;
      img[i * side + j] = 0.52 + 0.27 * std::sin(tau * u) * std::sin(tau * v) +
                          0.16 * std::exp(-(du * du + dv * dv) / (2.0 * 0.18 * 0.18));
    }
  return img;
}

NoisyVector add_poisson_noise(const RealVec& ytilde, double intensity_scale,
                              std::uint64_t seed) {
  if (!(intensity_scale > 0.0))
    throw std::invalid_argument("poisson noise: intensity_scale must be > 0");
  Rng rng(seed);
  NoisyVector out;
  out.values.resize(ytilde.size());
  for (std::size_t i = 0; i < ytilde.size(); ++i) {
    const double mean = std::max(ytilde[i], 0.0) * intensity_scale;
    out.values[i] =
        static_cast<double>(rng.poisson(mean)) / intensity_scale;
  }
  double mean_n = 0.0;
  for (std::size_t i = 0; i < ytilde.size(); ++i)
    mean_n += out.values[i] - ytilde[i];
  mean_n /= static_cast<double>(ytilde.size());
  double var = 0.0;
  for (std::size_t i = 0; i < ytilde.size(); ++i) {
    const double d = out.values[i] - ytilde[i] - mean_n;
    var += d * d;
  }
  out.noise_std = std::sqrt(var / static_cast<double>(ytilde.size()));
  return out;
}

double cosine_similarity(const RealVec& a, const RealVec& b) {
  check_dim(b.size(), a.size(), "cosine_similarity");
  const double na = std::sqrt(norm_sq(a)), nb = std::sqrt(norm_sq(b));
  if (na == 0.0 || nb == 0.0)
    throw std::invalid_argument("cosine_similarity: zero vector");
  return dot(a, b) / (na * nb);
}

GeneratedProblem generate_problem(const ExperimentConfig& cfg) {
  const std::size_t side = cfg.image_side;
  const std::size_t m = side * side;
  if (cfg.kernel_side * cfg.kernel_side > m)
    throw std::invalid_argument("kernel does not fit into the image");

  StructuredOperator opA =
      StructuredOperator::fourier_synthesis(cfg.wavelet, Grid::square(side));
  StructuredOperator opB = StructuredOperator::fourier_embedding(
      EmbeddingSpec::top_left(cfg.kernel_side, side));

  RealVec raw_image;
  if (cfg.image_source == "builtin") {
    raw_image = builtin_image(side);
  } else {
    PgmImage img = read_pgm(cfg.image_source);
    if (img.rows != side || img.cols != side)
      throw std::invalid_argument("image file does not match image_side");
    raw_image = std::move(img.pixels);
  }

  // Ground truth: the image is its own projection onto the retained
  // subbands, so the noiseless model is exact at (h, x).
  const OrthoWavelet* wav = opA.wavelet();
  RealVec x_true = wav->analyze(raw_image);
  RealVec image = wav->synthesize(x_true);
  RealVec h_true = make_blur_kernel(cfg);

  RealVec kernel_full(m, 0.0);
  for (std::size_t r = 0; r < cfg.kernel_side; ++r)
    for (std::size_t c = 0; c < cfg.kernel_side; ++c)
      kernel_full[r * side + c] = h_true[r * cfg.kernel_side + c];

  RealVec blurred = circular_convolve(kernel_full, image, Grid::square(side));
  double noise_std = 0.0;
  if (cfg.noise_type == "poisson") {
    NoisyVector noisy =
        add_poisson_noise(blurred, cfg.noise_intensity_scale, cfg.noise_seed);
    blurred = std::move(noisy.values);
    noise_std = noisy.noise_std;
  } else if (cfg.noise_type != "none") {
    throw std::invalid_argument("unknown noise type: " + cfg.noise_type);
  }

  // y = (1/sqrt(m)) F ytilde under the unitary DFT.
  CplxVec y = dft2_unitary(to_complex(blurred), side, side);
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
  for (auto& v : y) v *= inv_sqrt_m;

  DeconvProblem problem(std::move(opB), std::move(opA), std::move(y), cfg.reg,
                        ConstraintSpec{cfg.constraint});
  Point truth(std::move(h_true), std::move(x_true));
  const double psi_gt = problem.objective_psi(truth);
  return GeneratedProblem{std::move(problem), std::move(truth),
                          std::move(kernel_full), std::move(image),
                          std::move(blurred), noise_std, psi_gt};
}

Point make_initial_point(const DeconvProblem& p, const ExperimentConfig& cfg) {
  if (cfg.init_kind == "random")
    return uniform_random_init(p, cfg.init_seed, 0.0, 0.1);
  if (cfg.init_kind != "spectral")
    throw std::invalid_argument("unknown init kind: " + cfg.init_kind);
  SpectralInit init = spectral_init(p);
  const double s = std::sqrt(std::max(init.sigma, 0.0));
  scale(init.z, s);
  return p.project_constraint(std::move(init.z));
}

ComparisonResult run_comparison(const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  if (cfg.solvers.empty())
    throw std::invalid_argument("run_comparison: no solvers configured");
  ComparisonResult result{generate_problem(cfg), {}, {}};
  const DeconvProblem& p = result.generated.problem;
  const std::size_t side = cfg.image_side;

  fs::create_directories(cfg.output_dir);
  const std::string dir = cfg.output_dir + "/";
  write_pgm_normalized(dir + "kernel_true.pgm", result.generated.kernel, side, side);
  write_pgm_normalized(dir + "image_true.pgm", result.generated.image, side, side);
  write_pgm_normalized(dir + "blurred.pgm", result.generated.blurred, side, side);

  const Point z0 = make_initial_point(p, cfg);

  json summary;
  summary["m"] = p.m();
  summary["d1"] = p.d1();
  summary["d2"] = p.d2();
  summary["theta"] = p.reg().theta;
  summary["regularizer"] = to_string(p.reg().kind);
  summary["constraint"] = to_string(p.constraint().kind);
  summary["smad_L"] = p.smad_bound_L();
  summary["psi_ground_truth"] = result.generated.psi_gt;
  summary["noise_std"] = result.generated.noise_std;
  summary["init"] = cfg.init_kind;
  summary["solvers"] = json::array();

  for (const SolverConfig& scfg : cfg.solvers) {
    SolverSummary s;
    s.algorithm = to_string(scfg.algorithm);
    try {
      RunResult run = run_solver(p, scfg, z0, &result.generated.truth);
      s.ok = run.termination != Termination::aborted;
      s.message = run.message;
      s.termination = to_string(run.termination);
      s.final_psi = run.trace.back().psi;
      s.final_loss = run.trace.back().loss;
      s.cossim_h = run.trace.back().cossim_h;
      s.cossim_x = run.trace.back().cossim_x;
      s.log10_psi_gap =
          std::log10(std::abs(s.final_psi - result.generated.psi_gt));
      s.stationarity = stationarity_residual(p, run.z);
      s.iterations = run.trace.back().iter;
      s.restarts = run.restarts;
      s.seconds = run.trace.back().seconds;
      s.lambda = run.lambda_used;

      write_trace_csv(dir + "trace_" + s.algorithm + ".csv", run,
                      result.generated.psi_gt, cfg.record_timing);
      const RealVec rec_kernel = run.z.h;
      write_pgm_normalized(dir + "recovered_kernel_" + s.algorithm + ".pgm",
                           rec_kernel, cfg.kernel_side, cfg.kernel_side);
      const RealVec rec_image = p.opA().wavelet()->synthesize(run.z.x);
      write_pgm_normalized(dir + "recovered_image_" + s.algorithm + ".pgm",
                           rec_image, side, side);
      result.runs.emplace(s.algorithm, std::move(run));
    } catch (const std::exception& e) {
      s.ok = false;
      s.message = e.what();
      s.termination = "aborted";
    }
    json js;
    js["algorithm"] = s.algorithm;
    js["ok"] = s.ok;
    js["message"] = s.message;
    js["termination"] = s.termination;
    js["final_psi"] = s.final_psi;
    js["final_loss"] = s.final_loss;
    js["cossim_h"] = s.cossim_h;
    js["cossim_x"] = s.cossim_x;
    js["log10_psi_gap"] = s.log10_psi_gap;
    js["stationarity_residual"] = s.stationarity;
    js["iterations"] = s.iterations;
    js["restarts"] = s.restarts;
    js["seconds"] = cfg.record_timing ? s.seconds : 0.0;
    js["lambda"] = s.lambda;
    summary["solvers"].push_back(js);
    result.summaries.push_back(std::move(s));
  }

  std::ofstream out(dir + "summary.json");
  if (!out) throw std::runtime_error("cannot write summary.json");
  out << summary.dump(2) << "\n";
  return result;
}

}  // namespace bdeconv
