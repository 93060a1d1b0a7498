#pragma once

#include <memory>
#include <span>

#include "poro/linalg/sparse_matrix.hpp"

namespace poro::linalg {

/// Sparse LDL^T factorization of a symmetric matrix (fill-reducing ordering).
/// Works for quasi-definite matrices such as [[A, -D^T], [-D, -C]].
class LdlFactorization {
 public:
  /// Throws FactorizationError on a zero or near-zero pivot
  /// (|d_i| <= 1e-14 max_j |d_j|).
  explicit LdlFactorization(const SparseMatrix& a);
  ~LdlFactorization();
  LdlFactorization(LdlFactorization&&) noexcept;
  LdlFactorization& operator=(LdlFactorization&&) noexcept;

  Vector solve(std::span<const double> b) const;
  void solve(std::span<const double> b, std::span<double> x) const;
  std::size_t size() const { return n_; }

 private:
  struct Impl;
  std::size_t n_ = 0;
  std::unique_ptr<Impl> impl_;
};

Vector ldl_solve(const SparseMatrix& a, std::span<const double> b);

}  // namespace poro::linalg
