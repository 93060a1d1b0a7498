#include "poro/linalg/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "poro/error.hpp"

namespace poro::linalg {

namespace {

struct Banner {
  bool coordinate = true;
  bool symmetric = false;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Banner read_banner(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("matrix market: empty input");
  std::istringstream ss(lower(line));
  std::string tag, object, format, field, symmetry;
  ss >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%matrixmarket" || object != "matrix") {
    throw IoError("matrix market: missing banner");
  }
  if (field != "real" && field != "integer" && field != "double") {
    throw IoError("matrix market: unsupported field '" + field + "'");
  }
  Banner b;
  b.coordinate = format == "coordinate";
  if (!b.coordinate && format != "array") throw IoError("matrix market: bad format");
  if (symmetry == "symmetric") {
    b.symmetric = true;
  } else if (symmetry != "general") {
    throw IoError("matrix market: unsupported symmetry '" + symmetry + "'");
  }
  return b;
}

std::string next_data_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return line;
  }
  throw IoError("matrix market: unexpected end of input");
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  const Banner banner = read_banner(in);
  if (!banner.coordinate) throw IoError("matrix market: expected coordinate format");
  std::istringstream size_line(next_data_line(in));
  std::size_t rows = 0, cols = 0, entries = 0;
  if (!(size_line >> rows >> cols >> entries)) throw IoError("matrix market: bad size line");
  std::vector<Triplet> triplets;
  triplets.reserve(banner.symmetric ? 2 * entries : entries);
  for (std::size_t k = 0; k < entries; ++k) {
    std::istringstream ss(next_data_line(in));
    std::size_t i = 0, j = 0;
    double v = 0.0;
    if (!(ss >> i >> j >> v) || i == 0 || j == 0 || i > rows || j > cols) {
      throw IoError("matrix market: bad entry line");
    }
    triplets.push_back({i - 1, j - 1, v});
    if (banner.symmetric && i != j) triplets.push_back({j - 1, i - 1, v});
  }
  auto m = SparseMatrix::from_triplets(rows, cols, triplets);
  return banner.symmetric ? m.with_symmetric_flag(true) : m;
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
  const bool sym = a.is_symmetric();
  const auto off = a.row_offsets();
  const auto col = a.col_indices();
  const auto val = a.values();
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) {
      if (!sym || col[k] <= i) ++count;
    }
  }
  out << "%%MatrixMarket matrix coordinate real " << (sym ? "symmetric" : "general") << '\n';
  out << a.rows() << ' ' << a.cols() << ' ' << count << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) {
      if (!sym || col[k] <= i) out << i + 1 << ' ' << col[k] + 1 << ' ' << val[k] << '\n';
    }
  }
  if (!out) throw IoError("matrix market: write failed");
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a) {
  auto out = open_out(path);
  write_matrix_market(out, a);
}

Vector read_matrix_market_vector(std::istream& in) {
  const Banner banner = read_banner(in);
  if (banner.coordinate || banner.symmetric) throw IoError("matrix market: expected array format");
  std::istringstream size_line(next_data_line(in));
  std::size_t rows = 0, cols = 0;
  if (!(size_line >> rows >> cols) || cols != 1) throw IoError("matrix market: expected a column");
  Vector v(rows);
  for (auto& e : v) {
    std::istringstream ss(next_data_line(in));
    if (!(ss >> e)) throw IoError("matrix market: bad value");
  }
  return v;
}

Vector read_matrix_market_vector(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix_market_vector(in);
}

void write_matrix_market_vector(std::ostream& out, std::span<const double> v) {
  out << "%%MatrixMarket matrix array real general\n" << v.size() << " 1\n";
  out << std::setprecision(17);
  for (double e : v) out << e << '\n';
  if (!out) throw IoError("matrix market: write failed");
}

void write_matrix_market_vector(const std::filesystem::path& path, std::span<const double> v) {
  auto out = open_out(path);
  write_matrix_market_vector(out, v);
}

}  // namespace poro::linalg
