#pragma once

#include <cstddef>
#include <memory>

#include "bdeconv/types.hpp"

namespace bdeconv {

/// Complex-to-complex FFT of a fixed shape (1-D or 2-D row-major), backed by
/// FFTW. Plan creation happens once at construction and is serialized
/// internally; forward/backward execute on caller buffers and may be called
/// from many threads at once.
class Fft {
 public:
  explicit Fft(std::size_t n) : Fft(1, n) {}
  Fft(std::size_t rows, std::size_t cols);
  ~Fft();

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return rows_ * cols_; }

  // Unnormalized transforms, out-of-place (in and out must not alias).
  void forward(const CplxVec& in, CplxVec& out) const;
  void backward(const CplxVec& in, CplxVec& out) const;

  // Unitary convention: both directions scale by 1/sqrt(size()).
  void forward_unitary(const CplxVec& in, CplxVec& out) const;
  void backward_unitary(const CplxVec& in, CplxVec& out) const;

  /// Shared plans keyed by shape.
  static std::shared_ptr<const Fft> plan(std::size_t rows, std::size_t cols);

 private:
  std::size_t rows_, cols_;
  void* fwd_;  // fftw_plan
  void* bwd_;
};

/// Unitary DFT of a complex vector (1-D). Convenience wrapper for tests and
/// small utilities; uses the shared plan cache.
CplxVec dft_unitary(const CplxVec& v);
CplxVec idft_unitary(const CplxVec& v);

/// Unitary 2-D DFT of a row-major rows x cols array.
CplxVec dft2_unitary(const CplxVec& v, std::size_t rows, std::size_t cols);
CplxVec idft2_unitary(const CplxVec& v, std::size_t rows, std::size_t cols);

inline CplxVec to_complex(const RealVec& v) {
  CplxVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

inline RealVec real_part(const CplxVec& v) {
  RealVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
  return out;
}

}  // namespace bdeconv
