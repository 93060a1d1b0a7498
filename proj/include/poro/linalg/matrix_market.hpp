#pragma once

#include <filesystem>
#include <iosfwd>

#include "poro/linalg/sparse_matrix.hpp"

namespace poro::linalg {

// Matrix Market "coordinate real general|symmetric" for matrices and
// "array real general" (one column) for vectors. Values are written with 17
// significant digits so a round trip is exact.

SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::filesystem::path& path);
/// Symmetric matrices are written as their lower triangle.
void write_matrix_market(std::ostream& out, const SparseMatrix& a);
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a);

Vector read_matrix_market_vector(std::istream& in);
Vector read_matrix_market_vector(const std::filesystem::path& path);
void write_matrix_market_vector(std::ostream& out, std::span<const double> v);
void write_matrix_market_vector(const std::filesystem::path& path, std::span<const double> v);

}  // namespace poro::linalg
