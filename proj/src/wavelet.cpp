#include "bdeconv/wavelet.hpp"

#include <cmath>
#include <numbers>

#include "bdeconv/fft.hpp"

namespace bdeconv {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// Meyer auxiliary polynomial: nu(0)=0, nu(1)=1, nu(t)+nu(1-t)=1.
double meyer_nu(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * t * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t);
}

// Low-pass magnitude profile m(w) on [0, pi]: 1 on [0, pi/3], smooth Meyer
// roll-off on (pi/3, 2pi/3), 0 beyond. Satisfies m(w)^2 + m(pi-w)^2 = 1.
double meyer_m(double w) {
  const double pi = std::numbers::pi;
  if (w <= pi / 3.0) return 1.0;
  if (w >= 2.0 * pi / 3.0) return 0.0;
  return std::cos(0.5 * pi * meyer_nu(3.0 * w / pi - 1.0));
}

// Sampled low-pass DFT response H (real, even) and the conjugate-mirror
// high-pass G(k) = -exp(-2*pi*i*k/n) * H(k + n/2) for a length-n stage.
// |H(k)|^2 + |H(k + n/2)|^2 = 2 makes the stage orthogonal.
std::pair<CplxVec, CplxVec> make_meyer_filters(std::size_t n) {
  const double pi = std::numbers::pi;
  std::vector<double> h(n);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const double w = 2.0 * pi * static_cast<double>(k) / static_cast<double>(n);
    h[k] = kSqrt2 * meyer_m(w);
  }
  for (std::size_t k = n / 2 + 1; k < n; ++k) h[k] = h[n - k];
  CplxVec H(n), G(n);
  for (std::size_t k = 0; k < n; ++k) H[k] = h[k];
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = -2.0 * pi * static_cast<double>(k) / static_cast<double>(n);
    G[k] = -std::polar(1.0, phase) * h[(k + n / 2) % n];
  }
  return {std::move(H), std::move(G)};
}

}  // namespace

WaveletFamily wavelet_family_from_string(const std::string& s) {
  if (s == "haar") return WaveletFamily::haar;
  if (s == "meyer_approx" || s == "meyer") return WaveletFamily::meyer_approx;
  throw std::invalid_argument("unknown wavelet family: " + s);
}

std::string to_string(WaveletFamily f) {
  return f == WaveletFamily::haar ? "haar" : "meyer_approx";
}

OrthoWavelet::OrthoWavelet(WaveletSpec spec, Grid grid)
    : spec_(spec), grid_(grid) {
  if (spec.levels < 1) throw std::invalid_argument("wavelet levels must be >= 1");
  if (!grid.is_1d() && grid.rows != grid.cols)
    throw std::invalid_argument("2-D wavelet requires a square grid");
  std::size_t s = grid.cols;
  for (int l = 0; l < spec.levels; ++l) {
    if (s < 2 || s % 2 != 0)
      throw std::invalid_argument(
          "signal side must be divisible by 2^levels and >= 2^levels");
    if (spec.family == WaveletFamily::meyer_approx)
      meyer_filters_.emplace(s, make_meyer_filters(s));
    s /= 2;
  }

  // Canonical subband order: coarsest approximation first, then detail
  // blocks from coarsest to finest level (three quadrants per level in 2-D).
  const std::size_t coarse = grid.cols >> spec.levels;
  struct Block {
    std::size_t row, col, size;
  };
  std::vector<Block> blocks;
  if (grid.is_1d()) {
    subband_sizes_.push_back(coarse);
    blocks.push_back({0, 0, coarse});
    for (int l = spec.levels; l >= 1; --l) {
      const std::size_t b = grid.cols >> l;
      subband_sizes_.push_back(b);
      blocks.push_back({0, b, b});
    }
  } else {
    subband_sizes_.push_back(coarse * coarse);
    blocks.push_back({0, 0, coarse});
    for (int l = spec.levels; l >= 1; --l) {
      const std::size_t b = grid.cols >> l;
      for (int q = 0; q < 3; ++q) subband_sizes_.push_back(b * b);
      blocks.push_back({0, b, b});
      blocks.push_back({b, 0, b});
      blocks.push_back({b, b, b});
    }
  }
  if (spec.retained_subbands < 1 ||
      spec.retained_subbands > static_cast<int>(subband_sizes_.size()))
    throw std::invalid_argument("retained_subbands out of range");
  retained_dim_ = 0;
  for (int i = 0; i < spec.retained_subbands; ++i)
    retained_dim_ += subband_sizes_[static_cast<std::size_t>(i)];

  retained_map_.reserve(retained_dim_);
  for (int i = 0; i < spec.retained_subbands; ++i) {
    const Block& blk = blocks[static_cast<std::size_t>(i)];
    if (grid.is_1d()) {
      for (std::size_t c = 0; c < blk.size; ++c)
        retained_map_.push_back(blk.col + c);
    } else {
      for (std::size_t r = 0; r < blk.size; ++r)
        for (std::size_t c = 0; c < blk.size; ++c)
          retained_map_.push_back((blk.row + r) * grid.cols + (blk.col + c));
    }
  }
}

void OrthoWavelet::haar_stage(double* buf, std::size_t n, bool forward) const {
  std::vector<double> tmp(n);
  if (forward) {
    for (std::size_t i = 0; i < n / 2; ++i) {
      tmp[i] = (buf[2 * i] + buf[2 * i + 1]) / kSqrt2;
      tmp[n / 2 + i] = (buf[2 * i] - buf[2 * i + 1]) / kSqrt2;
    }
  } else {
    for (std::size_t i = 0; i < n / 2; ++i) {
      tmp[2 * i] = (buf[i] + buf[n / 2 + i]) / kSqrt2;
      tmp[2 * i + 1] = (buf[i] - buf[n / 2 + i]) / kSqrt2;
    }
  }
  std::copy(tmp.begin(), tmp.end(), buf);
}

void OrthoWavelet::meyer_stage(double* buf, std::size_t n, bool forward) const {
  const auto& [H, G] = meyer_filters_.at(n);
  const std::size_t half = n / 2;
  auto full = Fft::plan(1, n);
  auto sub = Fft::plan(1, half);
  if (forward) {
    CplxVec v(n), V, A(half), D(half), a, d;
    for (std::size_t i = 0; i < n; ++i) v[i] = buf[i];
    full->forward(v, V);
    for (std::size_t k = 0; k < half; ++k) {
      A[k] = 0.5 * (V[k] * std::conj(H[k]) + V[k + half] * std::conj(H[k + half]));
      D[k] = 0.5 * (V[k] * std::conj(G[k]) + V[k + half] * std::conj(G[k + half]));
    }
    sub->backward(A, a);
    sub->backward(D, d);
    const double s = 1.0 / static_cast<double>(half);
    for (std::size_t i = 0; i < half; ++i) {
      buf[i] = a[i].real() * s;
      buf[half + i] = d[i].real() * s;
    }
  } else {
    CplxVec a(half), d(half), A, D, V(n), v;
    for (std::size_t i = 0; i < half; ++i) {
      a[i] = buf[i];
      d[i] = buf[half + i];
    }
    sub->forward(a, A);
    sub->forward(d, D);
    for (std::size_t k = 0; k < n; ++k)
      V[k] = H[k] * A[k % half] + G[k] * D[k % half];
    full->backward(V, v);
    const double s = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = v[i].real() * s;
  }
}

void OrthoWavelet::stage1d(double* buf, std::size_t n, bool forward) const {
  if (spec_.family == WaveletFamily::haar)
    haar_stage(buf, n, forward);
  else
    meyer_stage(buf, n, forward);
}

// One decomposition/reconstruction level over the active prefix block.
void OrthoWavelet::stage(RealVec& data, std::size_t active, bool forward) const {
  if (grid_.is_1d()) {
    stage1d(data.data(), active, forward);
    return;
  }
  const std::size_t stride = grid_.cols;
  std::vector<double> buf(active);
  if (forward) {
    for (std::size_t r = 0; r < active; ++r)
      stage1d(data.data() + r * stride, active, true);
    for (std::size_t c = 0; c < active; ++c) {
      for (std::size_t r = 0; r < active; ++r) buf[r] = data[r * stride + c];
      stage1d(buf.data(), active, true);
      for (std::size_t r = 0; r < active; ++r) data[r * stride + c] = buf[r];
    }
  } else {
    for (std::size_t c = 0; c < active; ++c) {
      for (std::size_t r = 0; r < active; ++r) buf[r] = data[r * stride + c];
      stage1d(buf.data(), active, false);
      for (std::size_t r = 0; r < active; ++r) data[r * stride + c] = buf[r];
    }
    for (std::size_t r = 0; r < active; ++r)
      stage1d(data.data() + r * stride, active, false);
  }
}

RealVec OrthoWavelet::forward(const RealVec& signal) const {
  check_dim(signal.size(), grid_.size(), "OrthoWavelet::forward");
  RealVec out = signal;
  std::size_t active = grid_.cols;
  for (int l = 0; l < spec_.levels; ++l) {
    stage(out, active, true);
    active /= 2;
  }
  return out;
}

RealVec OrthoWavelet::inverse(const RealVec& coeffs) const {
  check_dim(coeffs.size(), grid_.size(), "OrthoWavelet::inverse");
  RealVec out = coeffs;
  std::size_t active = grid_.cols >> spec_.levels;
  for (int l = 0; l < spec_.levels; ++l) {
    active *= 2;
    stage(out, active, false);
  }
  return out;
}

RealVec OrthoWavelet::synthesize(const RealVec& retained) const {
  check_dim(retained.size(), retained_dim_, "OrthoWavelet::synthesize");
  RealVec coeffs(grid_.size(), 0.0);
  for (std::size_t i = 0; i < retained_dim_; ++i)
    coeffs[retained_map_[i]] = retained[i];
  return inverse(coeffs);
}

RealVec OrthoWavelet::analyze(const RealVec& signal) const {
  check_dim(signal.size(), grid_.size(), "OrthoWavelet::analyze");
  RealVec coeffs = forward(signal);
  RealVec out(retained_dim_);
  for (std::size_t i = 0; i < retained_dim_; ++i)
    out[i] = coeffs[retained_map_[i]];
  return out;
}

}  // namespace bdeconv
