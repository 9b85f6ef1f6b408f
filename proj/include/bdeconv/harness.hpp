#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bdeconv/model.hpp"
#include "bdeconv/solvers.hpp"
#include "bdeconv/types.hpp"
#include "bdeconv/wavelet.hpp"

namespace bdeconv {

/// One reproducible deblurring experiment: how to build the problem, which
/// solvers to run against it, and where to put the artifacts.
struct ExperimentConfig {
  std::string image_source = "builtin";  // "builtin" or a PGM path
  std::size_t image_side = 64;

  std::string blur_type = "diagonal_line";  // gaussian | custom_file
  std::size_t kernel_side = 7;
  double gaussian_sigma = 1.0;
  std::string kernel_path;

  WaveletSpec wavelet;

  std::string noise_type = "none";  // "poisson"
  double noise_intensity_scale = 1000.0;
  std::uint64_t noise_seed = 2024;

  RegularizerSpec reg{RegKind::l1_h, 0.01};
  ConstraintKind constraint = ConstraintKind::nonneg_both;

  std::string init_kind = "spectral";  // "random"
  std::uint64_t init_seed = 7;

  std::vector<SolverConfig> solvers;

  std::string output_dir = "out";
  bool record_timing = true;
};

/// Desk-scale defaults mirroring the reference experiment geometry:
/// 64 x 64 image, 7 x 7 kernel, coarse Haar subband (d2 = 1024), all four
/// solvers with a 10:1 iteration budget for the alternating baseline.
ExperimentConfig default_experiment_config();

ExperimentConfig load_experiment_config(const std::string& path);
void save_experiment_config(const ExperimentConfig& cfg, const std::string& path);

struct GeneratedProblem {
  DeconvProblem problem;
  Point truth;        // (h, x) ground truth
  RealVec kernel;     // embedded blur, length m
  RealVec image;      // synthesized image, length m
  RealVec blurred;    // circular convolution (plus noise when configured)
  double noise_std = 0.0;
  double psi_gt = 0.0;
};

/// Builds the synthetic problem of the configuration: a normalized blur
/// kernel, the wavelet-representable image, their circular convolution with
/// optional Poisson noise, and the Fourier-domain measurements.
GeneratedProblem generate_problem(const ExperimentConfig& cfg);

struct NoisyVector {
  RealVec values;
  double noise_std = 0.0;
};

/// y_i = Poisson(scale * max(y~_i, 0)) / scale, plus the empirical standard
/// deviation of the additive noise it induced.
NoisyVector add_poisson_noise(const RealVec& ytilde, double intensity_scale,
                              std::uint64_t seed);

/// <a, b> / (|a| |b|); throws on zero input vectors.
double cosine_similarity(const RealVec& a, const RealVec& b);

/// Smooth strictly positive test pattern on an n x n grid.
RealVec builtin_image(std::size_t side);

struct SolverSummary {
  std::string algorithm;
  bool ok = false;
  std::string message;  // abort reason when !ok
  double final_psi = 0.0;
  double final_loss = 0.0;
  double cossim_h = 0.0;
  double cossim_x = 0.0;
  double log10_psi_gap = 0.0;
  double stationarity = 0.0;
  int iterations = 0;
  int restarts = 0;
  double seconds = 0.0;
  double lambda = 0.0;
  std::string termination;
};

struct ComparisonResult {
  GeneratedProblem generated;
  std::vector<SolverSummary> summaries;
  std::map<std::string, RunResult> runs;  // keyed by algorithm name
};

/// Runs every configured solver on the generated problem and emits per-run
/// CSV traces, recovered kernel/image PGMs, and a summary JSON into
/// cfg.output_dir. A solver abort is recorded and the others continue.
ComparisonResult run_comparison(const ExperimentConfig& cfg);

/// Initial point per the configuration (spectral pair scaled by the square
/// root of the leading singular value, or a seeded uniform draw), projected
/// onto the closed constraint set.
Point make_initial_point(const DeconvProblem& p, const ExperimentConfig& cfg);

}  // namespace bdeconv
