#include "bdeconv/operators.hpp"

#include <algorithm>
#include <cmath>

namespace bdeconv {

EmbeddingSpec EmbeddingSpec::top_left(std::size_t kernel_side,
                                      std::size_t side) {
  if (kernel_side > side)
    throw std::invalid_argument("kernel side exceeds image side");
  EmbeddingSpec spec;
  spec.grid = Grid::square(side);
  spec.index_map.reserve(kernel_side * kernel_side);
  for (std::size_t r = 0; r < kernel_side; ++r)
    for (std::size_t c = 0; c < kernel_side; ++c)
      spec.index_map.push_back(r * side + c);
  return spec;
}

StructuredOperator StructuredOperator::fourier_embedding(EmbeddingSpec spec) {
  const std::size_t m = spec.grid.size();
  if (spec.index_map.empty() || spec.index_map.size() > m)
    throw std::invalid_argument("embedding: need 1 <= d1 <= m");
  std::vector<std::size_t> sorted = spec.index_map;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      sorted.back() >= m)
    throw std::invalid_argument("embedding index map must be injective into [0, m)");
  StructuredOperator op;
  op.kind_ = OperatorKind::fourier_embedding;
  op.input_dim_ = spec.index_map.size();
  op.output_dim_ = m;
  op.grid_ = spec.grid;
  op.embed_ = std::move(spec);
  op.fft_ = Fft::plan(op.grid_.rows, op.grid_.cols);
  return op;
}

StructuredOperator StructuredOperator::fourier_synthesis(WaveletSpec wspec,
                                                         Grid grid) {
  StructuredOperator op;
  op.kind_ = OperatorKind::fourier_synthesis;
  op.wavelet_ = std::make_shared<const OrthoWavelet>(wspec, grid);
  op.input_dim_ = op.wavelet_->retained_dim();
  op.output_dim_ = grid.size();
  op.grid_ = grid;
  op.fft_ = Fft::plan(grid.rows, grid.cols);
  return op;
}

StructuredOperator StructuredOperator::dense(CplxMatrix mat) {
  if (mat.rows == 0 || mat.cols == 0)
    throw std::invalid_argument("dense operator must be nonempty");
  StructuredOperator op;
  op.kind_ = OperatorKind::dense;
  op.input_dim_ = mat.cols;
  op.output_dim_ = mat.rows;
  op.grid_ = Grid::line(mat.rows);
  op.mat_ = std::make_shared<const CplxMatrix>(std::move(mat));
  return op;
}

CplxVec StructuredOperator::apply(const RealVec& v) const {
  check_dim(v.size(), input_dim_, "StructuredOperator::apply");
  switch (kind_) {
    case OperatorKind::fourier_embedding: {
      CplxVec embedded(output_dim_, 0.0);
      for (std::size_t i = 0; i < input_dim_; ++i)
        embedded[embed_.index_map[i]] = v[i];
      CplxVec out;
      fft_->forward_unitary(embedded, out);
      return out;
    }
    case OperatorKind::fourier_synthesis: {
      // conj(F * (synthesis v)); for a real signal the conjugate of the
      // unitary DFT is the unitary inverse DFT.
      const CplxVec img = to_complex(wavelet_->synthesize(v));
      CplxVec out;
      fft_->backward_unitary(img, out);
      return out;
    }
    case OperatorKind::dense: {
      CplxVec out(output_dim_, 0.0);
      for (std::size_t r = 0; r < output_dim_; ++r) {
        std::complex<double> s = 0.0;
        const std::complex<double>* row = mat_->data.data() + r * input_dim_;
        for (std::size_t c = 0; c < input_dim_; ++c) s += row[c] * v[c];
        out[r] = s;
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

RealVec StructuredOperator::adjoint_apply(const CplxVec& w) const {
  check_dim(w.size(), output_dim_, "StructuredOperator::adjoint_apply");
  switch (kind_) {
    case OperatorKind::fourier_embedding: {
      CplxVec t;
      fft_->backward_unitary(w, t);
      RealVec out(input_dim_);
      for (std::size_t i = 0; i < input_dim_; ++i)
        out[i] = t[embed_.index_map[i]].real();
      return out;
    }
    case OperatorKind::fourier_synthesis: {
      CplxVec t;
      fft_->forward_unitary(w, t);
      return wavelet_->analyze(real_part(t));
    }
    case OperatorKind::dense: {
      RealVec out(input_dim_, 0.0);
      for (std::size_t r = 0; r < output_dim_; ++r) {
        const std::complex<double>* row = mat_->data.data() + r * input_dim_;
        for (std::size_t c = 0; c < input_dim_; ++c)
          out[c] += (std::conj(row[c]) * w[r]).real();
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

RealVec StructuredOperator::row_norms_sq() const {
  switch (kind_) {
    case OperatorKind::fourier_embedding: {
      // Every DFT entry has modulus 1/sqrt(m), so each row norm is d1/m.
      const double v =
          static_cast<double>(input_dim_) / static_cast<double>(output_dim_);
      return RealVec(output_dim_, v);
    }
    case OperatorKind::fourier_synthesis: {
      // |row_j|^2 via the adjoint of the j-th basis vector, real and
      // imaginary responses separately.
      RealVec out(output_dim_);
      CplxVec e(output_dim_, 0.0), t;
      for (std::size_t j = 0; j < output_dim_; ++j) {
        e[j] = 1.0;
        fft_->forward_unitary(e, t);
        e[j] = 0.0;
        RealVec re(output_dim_), im(output_dim_);
        for (std::size_t i = 0; i < output_dim_; ++i) {
          re[i] = t[i].real();
          im[i] = t[i].imag();
        }
        out[j] = norm_sq(wavelet_->analyze(re)) + norm_sq(wavelet_->analyze(im));
      }
      return out;
    }
    case OperatorKind::dense: {
      RealVec out(output_dim_, 0.0);
      for (std::size_t r = 0; r < output_dim_; ++r) {
        double s = 0.0;
        const std::complex<double>* row = mat_->data.data() + r * input_dim_;
        for (std::size_t c = 0; c < input_dim_; ++c) s += std::norm(row[c]);
        out[r] = s;
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

RealVec circular_convolve(const RealVec& f, const RealVec& g) {
  return circular_convolve(f, g, Grid::line(f.size()));
}

RealVec circular_convolve(const RealVec& f, const RealVec& g, Grid grid) {
  if (f.size() != g.size())
    throw std::invalid_argument("circular_convolve: length mismatch");
  check_dim(f.size(), grid.size(), "circular_convolve");
  auto fft = Fft::plan(grid.rows, grid.cols);
  CplxVec F, G;
  fft->forward(to_complex(f), F);
  fft->forward(to_complex(g), G);
  for (std::size_t i = 0; i < F.size(); ++i) F[i] *= G[i];
  CplxVec out;
  fft->backward(F, out);
  RealVec result(f.size());
  const double s = 1.0 / static_cast<double>(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) result[i] = out[i].real() * s;
  return result;
}

}  // namespace bdeconv
