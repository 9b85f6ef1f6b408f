#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bdeconv {

/// Seeded RNG with platform-independent draws (uniforms come straight from
/// the mt19937_64 stream; the Poisson sampler is written out rather than
/// delegated to the standard library, whose algorithm is unspecified).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Poisson draw: Knuth's product method for small means, Hormann's
  /// transformed rejection (PTRS) otherwise.
  long long poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 30.0) return poisson_knuth(mean);
    return poisson_ptrs(mean);
  }

 private:
  long long poisson_knuth(double mean) {
    const double limit = std::exp(-mean);
    long long k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01();
    } while (p > limit);
    return k - 1;
  }

  long long poisson_ptrs(double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    while (true) {
      const double u = uniform01() - 0.5;
      const double v = uniform01();
      const double us = 0.5 - std::abs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= vr) return static_cast<long long>(kf);
      if (kf < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          -mean + kf * loglam - std::lgamma(kf + 1.0))
        return static_cast<long long>(kf);
    }
  }

  std::mt19937_64 gen_;
};

}  // namespace bdeconv
