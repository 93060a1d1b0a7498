#include "poro/linalg/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "poro/error.hpp"

namespace poro::linalg {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols,
                           std::vector<std::size_t> row_offsets,
                           std::vector<std::size_t> col_indices,
                           std::vector<double> values, bool symmetric)
    : rows_(rows),
      cols_(cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)),
      symmetric_(symmetric) {
  if (row_offsets_.size() != rows_ + 1 || row_offsets_.front() != 0) {
    throw DimensionError("CSR row_offsets must have length rows+1 and start at 0");
  }
  if (col_indices_.size() != values_.size() || row_offsets_.back() != values_.size()) {
    throw DimensionError("CSR arrays disagree on the number of stored entries");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    if (row_offsets_[i + 1] < row_offsets_[i]) {
      throw DimensionError("CSR row_offsets must be non-decreasing");
    }
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      if (col_indices_[k] >= cols_) {
        throw DimensionError("CSR column index out of bounds in row " + std::to_string(i));
      }
      if (k > row_offsets_[i] && col_indices_[k] <= col_indices_[k - 1]) {
        throw DimensionError("CSR column indices must increase strictly in row " +
                             std::to_string(i));
      }
    }
  }
  if (symmetric_ && rows_ != cols_) {
    throw DimensionError("a rectangular matrix cannot be flagged symmetric");
  }
}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::span<const Triplet> triplets,
                                         bool symmetric) {
  std::vector<std::size_t> counts(rows + 1, 0);
  for (const auto& t : triplets) {
    if (t.row >= rows || t.col >= cols) {
      throw DimensionError("triplet index out of bounds");
    }
    ++counts[t.row + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());

  // Bucket by row, then sort and merge each row.
  std::vector<std::pair<std::size_t, double>> bucket(triplets.size());
  std::vector<std::size_t> fill(counts.begin(), counts.end() - 1);
  for (const auto& t : triplets) {
    bucket[fill[t.row]++] = {t.col, t.value};
  }

  std::vector<std::size_t> offsets(rows + 1, 0);
  std::vector<std::size_t> cols_out;
  std::vector<double> vals_out;
  cols_out.reserve(triplets.size());
  vals_out.reserve(triplets.size());
  for (std::size_t i = 0; i < rows; ++i) {
    auto first = bucket.begin() + static_cast<std::ptrdiff_t>(counts[i]);
    auto last = bucket.begin() + static_cast<std::ptrdiff_t>(counts[i + 1]);
    std::stable_sort(first, last,
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = first; it != last; ++it) {
      if (!cols_out.empty() && offsets[i] < cols_out.size() &&
          cols_out.back() == it->first) {
        vals_out.back() += it->second;
      } else {
        cols_out.push_back(it->first);
        vals_out.push_back(it->second);
      }
    }
    offsets[i + 1] = cols_out.size();
  }
  return SparseMatrix(rows, cols, std::move(offsets), std::move(cols_out),
                      std::move(vals_out), symmetric);
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<double> ones(n, 1.0);
  return diagonal(ones);
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> diag) {
  const std::size_t n = diag.size();
  std::vector<std::size_t> offsets(n + 1);
  std::iota(offsets.begin(), offsets.end(), std::size_t{0});
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  return SparseMatrix(n, n, std::move(offsets), std::move(cols),
                      std::vector<double>(diag.begin(), diag.end()), true);
}

SparseMatrix SparseMatrix::zero(std::size_t rows, std::size_t cols) {
  return SparseMatrix(rows, cols, std::vector<std::size_t>(rows + 1, 0), {}, {},
                      rows == cols);
}

SparseMatrix SparseMatrix::from_dense(std::size_t rows, std::size_t cols,
                                      std::span<const double> row_major,
                                      bool symmetric) {
  if (row_major.size() != rows * cols) {
    throw DimensionError("dense input has the wrong number of entries");
  }
  std::vector<Triplet> triplets;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = row_major[i * cols + j];
      if (v != 0.0) triplets.push_back({i, j, v});
    }
  }
  return from_triplets(rows, cols, triplets, symmetric);
}

double SparseMatrix::coeff(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_) throw DimensionError("coeff index out of bounds");
  const auto first = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row]);
  const auto last = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row + 1]);
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

Vector SparseMatrix::diagonal_entries() const {
  Vector d(std::min(rows_, cols_), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = coeff(i, i);
  return d;
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> dense(rows_ * cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      dense[i * cols_ + col_indices_[k]] = values_[k];
    }
  }
  return dense;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<std::size_t> offsets(cols_ + 1, 0);
  for (std::size_t c : col_indices_) ++offsets[c + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  std::vector<std::size_t> cols(nnz());
  std::vector<double> vals(nnz());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const std::size_t dst = fill[col_indices_[k]]++;
      cols[dst] = i;
      vals[dst] = values_[k];
    }
  }
  return SparseMatrix(cols_, rows_, std::move(offsets), std::move(cols), std::move(vals),
                      symmetric_);
}

SparseMatrix SparseMatrix::scaled(double factor) const {
  SparseMatrix out = *this;
  for (double& v : out.values_) v *= factor;
  return out;
}

SparseMatrix SparseMatrix::with_symmetric_flag(bool symmetric) const {
  SparseMatrix out = *this;
  if (symmetric && rows_ != cols_) {
    throw DimensionError("a rectangular matrix cannot be flagged symmetric");
  }
  out.symmetric_ = symmetric;
  return out;
}

bool SparseMatrix::check_symmetry(double rel_tol) const {
  if (rows_ != cols_) return false;
  const double scale = std::max(max_abs(), 1e-300);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const std::size_t j = col_indices_[k];
      if (std::abs(values_[k] - coeff(j, i)) > rel_tol * scale) return false;
    }
  }
  return true;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha, double beta) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("add: dimension mismatch");
  }
  const auto ao = a.row_offsets(), bo = b.row_offsets();
  const auto ac = a.col_indices(), bc = b.col_indices();
  const auto av = a.values(), bv = b.values();
  std::vector<std::size_t> offsets(a.rows() + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  cols.reserve(a.nnz() + b.nnz());
  vals.reserve(a.nnz() + b.nnz());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::size_t p = ao[i], q = bo[i];
    while (p < ao[i + 1] || q < bo[i + 1]) {
      if (q >= bo[i + 1] || (p < ao[i + 1] && ac[p] < bc[q])) {
        cols.push_back(ac[p]);
        vals.push_back(alpha * av[p]);
        ++p;
      } else if (p >= ao[i + 1] || bc[q] < ac[p]) {
        cols.push_back(bc[q]);
        vals.push_back(beta * bv[q]);
        ++q;
      } else {
        cols.push_back(ac[p]);
        vals.push_back(alpha * av[p] + beta * bv[q]);
        ++p;
        ++q;
      }
    }
    offsets[i + 1] = cols.size();
  }
  return SparseMatrix(a.rows(), a.cols(), std::move(offsets), std::move(cols),
                      std::move(vals), a.is_symmetric() && b.is_symmetric());
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
  const auto ao = a.row_offsets(), bo = b.row_offsets();
  const auto ac = a.col_indices(), bc = b.col_indices();
  const auto av = a.values(), bv = b.values();

  std::vector<std::size_t> offsets(a.rows() + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  std::vector<double> accum(b.cols(), 0.0);
  std::vector<std::size_t> marker(b.cols(), static_cast<std::size_t>(-1));
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    touched.clear();
    for (std::size_t p = ao[i]; p < ao[i + 1]; ++p) {
      const std::size_t k = ac[p];
      for (std::size_t q = bo[k]; q < bo[k + 1]; ++q) {
        const std::size_t j = bc[q];
        if (marker[j] != i) {
          marker[j] = i;
          accum[j] = 0.0;
          touched.push_back(j);
        }
        accum[j] += av[p] * bv[q];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::size_t j : touched) {
      cols.push_back(j);
      vals.push_back(accum[j]);
    }
    offsets[i + 1] = cols.size();
  }
  return SparseMatrix(a.rows(), b.cols(), std::move(offsets), std::move(cols),
                      std::move(vals));
}

SparseMatrix scale_columns(const SparseMatrix& a, std::span<const double> d) {
  if (d.size() != a.cols()) throw DimensionError("scale_columns: length mismatch");
  std::vector<double> vals(a.values().begin(), a.values().end());
  const auto cols = a.col_indices();
  for (std::size_t k = 0; k < vals.size(); ++k) vals[k] *= d[cols[k]];
  return SparseMatrix(a.rows(), a.cols(),
                      std::vector<std::size_t>(a.row_offsets().begin(), a.row_offsets().end()),
                      std::vector<std::size_t>(cols.begin(), cols.end()), std::move(vals));
}

SparseMatrix extract(const SparseMatrix& a, std::span<const std::size_t> rows,
                     std::span<const std::size_t> cols) {
  constexpr auto kDropped = static_cast<std::size_t>(-1);
  std::vector<std::size_t> col_map(a.cols(), kDropped);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= a.cols()) throw DimensionError("extract: column out of bounds");
    col_map[cols[j]] = j;
  }
  const auto ao = a.row_offsets();
  const auto ac = a.col_indices();
  const auto av = a.values();
  std::vector<Triplet> triplets;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= a.rows()) throw DimensionError("extract: row out of bounds");
    for (std::size_t k = ao[rows[i]]; k < ao[rows[i] + 1]; ++k) {
      if (col_map[ac[k]] != kDropped) triplets.push_back({i, col_map[ac[k]], av[k]});
    }
  }
  const bool same_index_set =
      rows.size() == cols.size() && std::equal(rows.begin(), rows.end(), cols.begin());
  return SparseMatrix::from_triplets(rows.size(), cols.size(), triplets,
                                     a.is_symmetric() && same_index_set);
}

SparseMatrix block_symmetric(const SparseMatrix& a, const SparseMatrix& b,
                             const SparseMatrix& c) {
  if (!a.is_square() || !c.is_square() || b.rows() != c.rows() || b.cols() != a.cols()) {
    throw DimensionError("block_symmetric: incompatible blocks");
  }
  const std::size_t n = a.rows();
  const std::size_t m = c.rows();
  std::vector<Triplet> triplets;
  triplets.reserve(a.nnz() + 2 * b.nnz() + c.nnz());
  auto push = [&](const SparseMatrix& mat, std::size_t r0, std::size_t c0, bool transposed) {
    const auto o = mat.row_offsets();
    const auto ci = mat.col_indices();
    const auto v = mat.values();
    for (std::size_t i = 0; i < mat.rows(); ++i) {
      for (std::size_t k = o[i]; k < o[i + 1]; ++k) {
        if (transposed) {
          triplets.push_back({r0 + ci[k], c0 + i, v[k]});
        } else {
          triplets.push_back({r0 + i, c0 + ci[k], v[k]});
        }
      }
    }
  };
  push(a, 0, 0, false);
  push(b, 0, n, true);
  push(b, n, 0, false);
  push(c, n, n, false);
  return SparseMatrix::from_triplets(n + m, n + m, triplets, true);
}

}  // namespace poro::linalg
