#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "bdeconv/fft.hpp"
#include "bdeconv/types.hpp"
#include "bdeconv/wavelet.hpp"

namespace bdeconv {

/// Minimal dense complex matrix, row-major.
struct CplxMatrix {
  std::size_t rows = 0, cols = 0;
  CplxVec data;

  CplxMatrix() = default;
  CplxMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  std::complex<double>& at(std::size_t r, std::size_t c) {
    return data[r * cols + c];
  }
  const std::complex<double>& at(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }

  static CplxMatrix identity(std::size_t n) {
    CplxMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

/// Placement of a d1-dimensional kernel vector into an m-dimensional signal:
/// entry i of the input lands at index_map[i], zeros elsewhere.
struct EmbeddingSpec {
  Grid grid;
  std::vector<std::size_t> index_map;

  /// k x k kernel into the top-left corner of a side x side image, row-major.
  static EmbeddingSpec top_left(std::size_t kernel_side, std::size_t side);
};

enum class OperatorKind { fourier_embedding, fourier_synthesis, dense };

/// Structured complex linear map from real input vectors to complex output
/// vectors. `fourier_embedding` is the unitary DFT of an embedded kernel
/// (the measurement map for the filter block); `fourier_synthesis` is the
/// conjugate DFT of a wavelet synthesis (the map whose conjugate makes the
/// image block's spectrum cheap); `dense` is an explicit matrix.
///
/// adjoint_apply returns the real part of the true adjoint, which is what
/// gradients with respect to the real variables need. Instances are
/// immutable after construction; apply/adjoint_apply are safe to call
/// concurrently.
class StructuredOperator {
 public:
  static StructuredOperator fourier_embedding(EmbeddingSpec spec);
  static StructuredOperator fourier_synthesis(WaveletSpec wspec, Grid grid);
  static StructuredOperator dense(CplxMatrix mat);

  OperatorKind kind() const { return kind_; }
  std::size_t input_dim() const { return input_dim_; }
  std::size_t output_dim() const { return output_dim_; }
  const Grid& grid() const { return grid_; }
  const OrthoWavelet* wavelet() const { return wavelet_.get(); }

  CplxVec apply(const RealVec& v) const;
  RealVec adjoint_apply(const CplxVec& w) const;

  /// Squared Euclidean norms of the operator's rows.
  RealVec row_norms_sq() const;

 private:
  StructuredOperator() = default;

  OperatorKind kind_ = OperatorKind::dense;
  std::size_t input_dim_ = 0, output_dim_ = 0;
  Grid grid_;
  EmbeddingSpec embed_;
  std::shared_ptr<const OrthoWavelet> wavelet_;
  std::shared_ptr<const Fft> fft_;
  std::shared_ptr<const CplxMatrix> mat_;
};

/// Circular convolution of real vectors on a 1-D torus.
RealVec circular_convolve(const RealVec& f, const RealVec& g);

/// Circular convolution on the torus of `grid` (2-D for images).
RealVec circular_convolve(const RealVec& f, const RealVec& g, Grid grid);

}  // namespace bdeconv
