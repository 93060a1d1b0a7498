#pragma once

#include <cstddef>
#include <span>

#include "poro/linalg/preconditioner.hpp"
#include "poro/linalg/sparse_matrix.hpp"

namespace poro::linalg {

struct SolveReport {
  std::size_t iterations = 0;
  /// Relative residual ||b - A x|| / ||b|| of the returned iterate.
  double final_residual = 0.0;
  bool converged = false;
  double wall_time = 0.0;  // seconds
};

struct SolveResult {
  Vector x;
  SolveReport report;
};

/// Preconditioned conjugate gradients for SPD `a`.
///
/// Stops when the true relative residual ||b - A x|| / ||b|| <= tol. The
/// recursive residual drives the iteration and is re-verified against an
/// explicit residual before convergence is reported. Exceeding max_iter is
/// not an error: the last iterate is returned with converged = false.
/// `x0` seeds the iteration when non-empty.
SolveResult cg_solve(const SparseMatrix& a, std::span<const double> b,
                     const Preconditioner& p, double tol, std::size_t max_iter,
                     std::span<const double> x0 = {});

/// Preconditioned MINRES for symmetric (possibly indefinite) `s` with an SPD
/// preconditioner. Same stopping rule and return contract as cg_solve.
SolveResult minres_solve(const SparseMatrix& s, std::span<const double> b,
                         const Preconditioner& p, double tol, std::size_t max_iter,
                         std::span<const double> x0 = {});

}  // namespace poro::linalg
