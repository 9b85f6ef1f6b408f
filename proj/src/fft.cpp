#include "bdeconv/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace bdeconv {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(CplxVec& v) {
  return reinterpret_cast<fftw_complex*>(v.data());
}

const fftw_complex* as_fftw(const CplxVec& v) {
  return reinterpret_cast<const fftw_complex*>(v.data());
}

}  // namespace

Fft::Fft(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("Fft: zero-sized transform");
  CplxVec a(rows * cols), b(rows * cols);
  // FFTW's planner is not reentrant; execution on fresh buffers is.
  std::lock_guard<std::mutex> lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  if (rows == 1) {
    fwd_ = fftw_plan_dft_1d(static_cast<int>(cols), as_fftw(a), as_fftw(b),
                            FFTW_FORWARD, flags);
    bwd_ = fftw_plan_dft_1d(static_cast<int>(cols), as_fftw(a), as_fftw(b),
                            FFTW_BACKWARD, flags);
  } else {
    fwd_ = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols),
                            as_fftw(a), as_fftw(b), FFTW_FORWARD, flags);
    bwd_ = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols),
                            as_fftw(a), as_fftw(b), FFTW_BACKWARD, flags);
  }
  if (!fwd_ || !bwd_) throw std::runtime_error("Fft: fftw planning failed");
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void Fft::forward(const CplxVec& in, CplxVec& out) const {
  check_dim(in.size(), size(), "Fft::forward");
  out.resize(size());
  fftw_execute_dft(static_cast<fftw_plan>(fwd_),
                   const_cast<fftw_complex*>(as_fftw(in)), as_fftw(out));
}

void Fft::backward(const CplxVec& in, CplxVec& out) const {
  check_dim(in.size(), size(), "Fft::backward");
  out.resize(size());
  fftw_execute_dft(static_cast<fftw_plan>(bwd_),
                   const_cast<fftw_complex*>(as_fftw(in)), as_fftw(out));
}

void Fft::forward_unitary(const CplxVec& in, CplxVec& out) const {
  forward(in, out);
  const double s = 1.0 / std::sqrt(static_cast<double>(size()));
  for (auto& v : out) v *= s;
}

void Fft::backward_unitary(const CplxVec& in, CplxVec& out) const {
  backward(in, out);
  const double s = 1.0 / std::sqrt(static_cast<double>(size()));
  for (auto& v : out) v *= s;
}

std::shared_ptr<const Fft> Fft::plan(std::size_t rows, std::size_t cols) {
  static std::mutex cache_mutex;
  static std::map<std::pair<std::size_t, std::size_t>, std::weak_ptr<const Fft>>
      cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[{rows, cols}];
  if (auto p = slot.lock()) return p;
  auto p = std::make_shared<const Fft>(rows, cols);
  slot = p;
  return p;
}

CplxVec dft_unitary(const CplxVec& v) {
  CplxVec out;
  Fft::plan(1, v.size())->forward_unitary(v, out);
  return out;
}

CplxVec idft_unitary(const CplxVec& v) {
  CplxVec out;
  Fft::plan(1, v.size())->backward_unitary(v, out);
  return out;
}

CplxVec dft2_unitary(const CplxVec& v, std::size_t rows, std::size_t cols) {
  check_dim(v.size(), rows * cols, "dft2_unitary");
  CplxVec out;
  Fft::plan(rows, cols)->forward_unitary(v, out);
  return out;
}

CplxVec idft2_unitary(const CplxVec& v, std::size_t rows, std::size_t cols) {
  check_dim(v.size(), rows * cols, "idft2_unitary");
  CplxVec out;
  Fft::plan(rows, cols)->backward_unitary(v, out);
  return out;
}

}  // namespace bdeconv
