#pragma once

#include <string>
#include <vector>

#include "bdeconv/solvers.hpp"
#include "bdeconv/types.hpp"

namespace bdeconv {

struct PgmImage {
  std::size_t rows = 0, cols = 0;
  RealVec pixels;  // normalized to [0, 1]
};

/// 8-bit binary PGM (P5) reader; pixel values come back in [0, 1].
PgmImage read_pgm(const std::string& path);

/// Writes `data` as a P5 image, linearly mapping [min, max] onto [0, 255],
/// and records the mapping in a `<path>.json` sidecar.
void write_pgm_normalized(const std::string& path, const RealVec& data,
                          std::size_t rows, std::size_t cols);

/// Per-iteration trace as CSV with a fixed header. Doubles are printed with
/// 17 significant digits so a reader recovers them exactly. When
/// `include_timing` is false the seconds column is written as 0 so repeated
/// seeded runs produce identical bytes.
void write_trace_csv(const std::string& path, const RunResult& result,
                     double psi_gt, bool include_timing);

/// Numeric rows of a CSV written by this project (header skipped).
std::vector<std::vector<double>> read_csv_doubles(const std::string& path);

/// printf-style %.17g formatting used for all emitted doubles.
std::string format_double(double v);

}  // namespace bdeconv
