#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace poro::experiments {

/// Reals are written in scientific notation with 9 significant digits,
/// integers verbatim. Text cells must not contain commas, semicolons, quotes
/// or line breaks.
using CsvCell = std::variant<double, std::int64_t, std::string>;

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  /// Throws DimensionError on a width mismatch and IoError on a non-finite
  /// real or a forbidden character.
  void add_row(std::vector<CsvCell> row);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<CsvCell>>& rows() const { return rows_; }
  std::size_t column_index(const std::string& name) const;
  double number(std::size_t row, const std::string& column) const;

  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<CsvCell>> rows_;
};

std::string format_real(double value);

}  // namespace poro::experiments
