#pragma once

#include <functional>
#include <span>

#include "poro/linalg/sparse_matrix.hpp"

namespace poro::linalg {

/// y = Op x
using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

struct SpectralOptions {
  double tol = 1e-13;
  std::size_t max_iter = 20000;
  /// Optional SPD weight W; iterates are normalized in the W-norm. Pass the
  /// matrix in which the operator is self-adjoint for fastest convergence.
  const SparseMatrix* weight = nullptr;
};

/// Power-iteration estimate of the spectral radius of `op` on R^dim.
///
/// Uses the two-step quotient sqrt(|Op^2 x| / |x|), so a dominant pair
/// +rho / -rho does not stall the iteration. The dominant eigenvalues must
/// be real; a complex dominant pair ends in ConvergenceError. The start
/// vector is all-ones;
/// if it lies in the kernel a fixed pseudo-random vector is tried next.
/// Stops when the relative change of the estimate is below tol on two
/// consecutive iterations. Throws ConvergenceError at the iteration cap.
double spectral_radius(const LinearOperator& op, std::size_t dim,
                       const SpectralOptions& options = {});

double spectral_radius(const SparseMatrix& a, const SpectralOptions& options = {});

/// Spectral radius of an operator that is self-adjoint in the W inner
/// product (W = options.weight, identity when null), by Lanczos with full
/// reorthogonalization. Stops when the extreme Ritz pair has residual
/// below tol times its value or the Krylov space becomes invariant; the
/// Krylov dimension is capped by min(dim, max_iter, 400). The start vector is
/// all-ones, with a fixed pseudo-random fallback.
double spectral_radius_selfadjoint(const LinearOperator& op, std::size_t dim,
                                   const SpectralOptions& options = {});

}  // namespace poro::linalg
