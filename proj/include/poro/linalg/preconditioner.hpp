#pragma once

#include <memory>
#include <span>
#include <string_view>

#include "poro/linalg/sparse_matrix.hpp"

namespace poro::linalg {

enum class PreconditionerKind { Identity, Jacobi, IncompleteCholesky0, BlockSchurDiagonal };

std::string_view to_string(PreconditionerKind kind);
PreconditionerKind preconditioner_from_string(std::string_view name);

/// Zero-fill incomplete Cholesky factor L (lower triangle incl. diagonal) with
/// A + shift * diag(A) ~= L L^T. The shift starts at zero and is raised
/// geometrically until every pivot is positive.
class IncompleteCholesky {
 public:
  explicit IncompleteCholesky(const SparseMatrix& a);

  /// z = (L L^T)^{-1} r
  void apply(std::span<const double> r, std::span<double> z) const;
  std::size_t size() const { return n_; }
  double shift() const { return shift_; }

 private:
  bool try_factor(const SparseMatrix& a, double shift);

  std::size_t n_ = 0;
  double shift_ = 0.0;
  // Lower factor by rows; the diagonal entry is the last of each row.
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> cols_;
  std::vector<double> vals_;
};

/// Linear SPD preconditioner z = P r.
///
/// BlockSchurDiagonal acts on [u; p] with blocks IC0(A)^{-1} and
/// IC0(S)^{-1}, S = C_tau + D diag(A)^{-1} D^T the usual pressure Schur
/// complement with A^{-1} replaced by its inverse diagonal.
class Preconditioner {
 public:
  static Preconditioner identity(std::size_t n);
  static Preconditioner jacobi(const SparseMatrix& a);
  static Preconditioner incomplete_cholesky(const SparseMatrix& a);
  static Preconditioner block_schur(const SparseMatrix& a, const SparseMatrix& d,
                                    const SparseMatrix& c_tau);
  /// Single-matrix factory for Identity/Jacobi/IncompleteCholesky0.
  static Preconditioner make(PreconditionerKind kind, const SparseMatrix& a);

  void apply(std::span<const double> r, std::span<double> z) const;
  Vector apply(std::span<const double> r) const;

  PreconditionerKind kind() const { return kind_; }
  std::size_t size() const { return n_; }

 private:
  struct Impl;
  Preconditioner(PreconditionerKind kind, std::size_t n, std::shared_ptr<const Impl> impl);

  PreconditionerKind kind_ = PreconditionerKind::Identity;
  std::size_t n_ = 0;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace poro::linalg
