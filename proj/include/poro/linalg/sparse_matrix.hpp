#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace poro::linalg {

using Vector = std::vector<double>;

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed-sparse-row real matrix.
///
/// Column indices are strictly increasing within each row. The symmetric flag
/// is a promise made by the producer; `check_symmetry` validates it on demand
/// and nothing checks it per access.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Takes ownership of raw CSR arrays after validating their structure.
  SparseMatrix(std::size_t rows, std::size_t cols,
               std::vector<std::size_t> row_offsets,
               std::vector<std::size_t> col_indices, std::vector<double> values,
               bool symmetric = false);

  /// Duplicate entries are summed. Explicit zeros are kept so that the
  /// sparsity pattern reflects the element connectivity.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    std::span<const Triplet> triplets,
                                    bool symmetric = false);
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix diagonal(std::span<const double> diag);
  static SparseMatrix zero(std::size_t rows, std::size_t cols);
  /// Dense row-major input; entries equal to zero are dropped.
  static SparseMatrix from_dense(std::size_t rows, std::size_t cols,
                                 std::span<const double> row_major,
                                 bool symmetric = false);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const { return symmetric_; }

  std::span<const std::size_t> row_offsets() const { return row_offsets_; }
  std::span<const std::size_t> col_indices() const { return col_indices_; }
  std::span<const double> values() const { return values_; }

  /// Entry lookup by binary search; absent entries read as zero.
  double coeff(std::size_t row, std::size_t col) const;
  Vector diagonal_entries() const;
  std::vector<double> to_dense() const;

  SparseMatrix transpose() const;
  SparseMatrix scaled(double factor) const;
  SparseMatrix with_symmetric_flag(bool symmetric) const;

  /// True when |a_ij - a_ji| <= rel_tol * max|a| for every stored pair.
  bool check_symmetry(double rel_tol = 1e-14) const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
  bool symmetric_ = false;
};

/// alpha * a + beta * b on the union pattern.
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha = 1.0,
                 double beta = 1.0);
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
/// a * diag(d) (scales column j by d[j]).
SparseMatrix scale_columns(const SparseMatrix& a, std::span<const double> d);
/// Keeps the listed rows and columns, renumbered in the order given.
SparseMatrix extract(const SparseMatrix& a, std::span<const std::size_t> rows,
                     std::span<const std::size_t> cols);
/// Symmetric 2x2 block matrix [[a, b^T], [b, c]].
SparseMatrix block_symmetric(const SparseMatrix& a, const SparseMatrix& b,
                             const SparseMatrix& c);

}  // namespace poro::linalg
