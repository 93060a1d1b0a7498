#include "poro/experiments/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "poro/error.hpp"

namespace poro::experiments {

namespace {

void check_text(const std::string& s) {
  if (s.find_first_of(",;\"\n\r") != std::string::npos) {
    throw IoError("csv: forbidden character in cell '" + s + "'");
  }
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.8e", value);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw DimensionError("csv: no columns");
  for (const auto& c : columns_) check_text(c);
}

void CsvTable::add_row(std::vector<CsvCell> row) {
  if (row.size() != columns_.size()) throw DimensionError("csv: row width does not match header");
  for (const auto& cell : row) {
    if (const auto* d = std::get_if<double>(&cell); d && !std::isfinite(*d)) {
      throw IoError("csv: non-finite value");
    }
    if (const auto* s = std::get_if<std::string>(&cell)) check_text(*s);
  }
  rows_.push_back(std::move(row));
}

std::size_t CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name) return i;
  }
  throw ConfigError("csv: no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& column) const {
  const CsvCell& cell = rows_.at(row).at(column_index(column));
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
  throw ConfigError("csv: column '" + column + "' is not numeric");
}

void CsvTable::write(std::ostream& out) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out << format_real(v);
            } else {
              out << v;
            }
          },
          row[i]);
    }
    out << '\n';
  }
}

void CsvTable::write(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw IoError("csv: cannot open " + path.string());
  write(out);
  if (!out) throw IoError("csv: write failed for " + path.string());
}

std::string CsvTable::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace poro::experiments
