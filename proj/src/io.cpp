#include "bdeconv/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bdeconv {

namespace {

int next_pgm_token(std::istream& in) {
  // Whitespace-separated integer tokens, '#' comments allowed.
  for (;;) {
    int c = in.peek();
    if (c == EOF) throw std::runtime_error("pgm: truncated header");
    if (c == '#') {
      std::string line;
      std::getline(in, line);
      continue;
    }
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    int value = 0;
    in >> value;
    if (!in) throw std::runtime_error("pgm: malformed header");
    return value;
  }
}

}  // namespace

PgmImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("pgm: cannot open " + path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '5')
    throw std::runtime_error("pgm: not a P5 file: " + path);
  const int cols = next_pgm_token(in);
  const int rows = next_pgm_token(in);
  const int maxval = next_pgm_token(in);
  if (cols <= 0 || rows <= 0 || maxval <= 0 || maxval > 255)
    throw std::runtime_error("pgm: expected 8-bit P5 dimensions in " + path);
  in.get();  // single whitespace before raster
  PgmImage img;
  img.rows = static_cast<std::size_t>(rows);
  img.cols = static_cast<std::size_t>(cols);
  std::vector<unsigned char> raw(img.rows * img.cols);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!in) throw std::runtime_error("pgm: truncated raster in " + path);
  img.pixels.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    img.pixels[i] = static_cast<double>(raw[i]) / static_cast<double>(maxval);
  return img;
}

void write_pgm_normalized(const std::string& path, const RealVec& data,
                          std::size_t rows, std::size_t cols) {
  check_dim(data.size(), rows * cols, "write_pgm_normalized");
  const auto [mn_it, mx_it] = std::minmax_element(data.begin(), data.end());
  const double mn = *mn_it, mx = *mx_it;
  const double span = mx > mn ? mx - mn : 1.0;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("pgm: cannot write " + path);
  out << "P5\n" << cols << " " << rows << "\n255\n";
  std::vector<unsigned char> raw(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double v = (data[i] - mn) / span;
    raw[i] = static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));

  nlohmann::json side;
  side["min"] = mn;
  side["max"] = mx;
  side["rows"] = rows;
  side["cols"] = cols;
  std::ofstream sidecar(path + ".json");
  sidecar << side.dump(2) << "\n";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace_csv(const std::string& path, const RunResult& result,
                     double psi_gt, bool include_timing) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("csv: cannot write " + path);
  out << "iter,psi,loss,log10_psi_gap,cossim_h,cossim_x,restarted,step_size,seconds\n";
  for (const IterationRecord& r : result.trace) {
    const double gap = std::log10(std::abs(r.psi - psi_gt));
    out << r.iter << ',' << format_double(r.psi) << ',' << format_double(r.loss)
        << ',' << format_double(gap) << ',' << format_double(r.cossim_h) << ','
        << format_double(r.cossim_x) << ',' << (r.restarted ? 1 : 0) << ','
        << format_double(r.step_size) << ','
        << format_double(include_timing ? r.seconds : 0.0) << '\n';
  }
}

std::vector<std::vector<double>> read_csv_doubles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace bdeconv
