#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "bdeconv/types.hpp"

namespace bdeconv {

/// Signal geometry: rows == 1 is a 1-D signal of length cols, otherwise a
/// row-major rows x cols image (square for wavelet use).
struct Grid {
  std::size_t rows = 1;
  std::size_t cols = 0;
  std::size_t size() const { return rows * cols; }
  bool is_1d() const { return rows == 1; }
  static Grid line(std::size_t n) { return {1, n}; }
  static Grid square(std::size_t side) { return {side, side}; }
};

enum class WaveletFamily { haar, meyer_approx };

WaveletFamily wavelet_family_from_string(const std::string& s);
std::string to_string(WaveletFamily f);

/// Orthogonal wavelet dictionary spec for the image block.
/// `retained_subbands` counts leading blocks in the canonical order (coarsest
/// approximation first, then detail blocks from coarsest to finest level);
/// the retained blocks form the d2-dimensional coefficient vector.
struct WaveletSpec {
  WaveletFamily family = WaveletFamily::haar;
  int levels = 1;
  int retained_subbands = 1;
};

/// Separable orthogonal wavelet transform on a 1-D signal or square image.
/// The coefficient array uses the Mallat layout; in 2-D the detail quadrants
/// of each level are ordered top-right, bottom-left, bottom-right.
class OrthoWavelet {
 public:
  OrthoWavelet(WaveletSpec spec, Grid grid);

  const Grid& grid() const { return grid_; }
  const WaveletSpec& spec() const { return spec_; }

  /// Sizes of the canonical subbands (sums to grid().size()).
  const std::vector<std::size_t>& subband_sizes() const { return subband_sizes_; }
  /// Dimension d2 spanned by the retained leading subbands.
  std::size_t retained_dim() const { return retained_dim_; }

  // Full orthogonal transform pair, both size() -> size().
  RealVec forward(const RealVec& signal) const;
  RealVec inverse(const RealVec& coeffs) const;

  /// Synthesis restricted to the retained subbands: d2 -> m.
  RealVec synthesize(const RealVec& retained) const;
  /// Analysis onto the retained subbands (transpose of synthesize): m -> d2.
  RealVec analyze(const RealVec& signal) const;

 private:
  void stage(RealVec& data, std::size_t active, bool forward) const;
  void stage1d(double* buf, std::size_t n, bool forward) const;
  void haar_stage(double* buf, std::size_t n, bool forward) const;
  void meyer_stage(double* buf, std::size_t n, bool forward) const;

  WaveletSpec spec_;
  Grid grid_;
  std::vector<std::size_t> subband_sizes_;
  std::size_t retained_dim_;
  // Packed retained-coefficient position -> coefficient-array index.
  std::vector<std::size_t> retained_map_;
  // Sampled frequency responses of the low/high-pass filters per stage size.
  std::map<std::size_t, std::pair<CplxVec, CplxVec>> meyer_filters_;
};

}  // namespace bdeconv
