#pragma once

#include <optional>

#include "poro/linalg/sparse_matrix.hpp"
#include "poro/model/material.hpp"
#include "poro/model/time_function.hpp"

namespace poro::model {

using linalg::SparseMatrix;

/// Semi-discrete Biot system
///   A u - D^T p = f(t),   D u' + C p' + B p = g(t),   u(0) = u0, p(0) = p0
/// with A (n_u x n_u), B and C (n_p x n_p) SPD and D (n_p x n_u).
struct PoroSystem {
  SparseMatrix a;
  SparseMatrix b;
  SparseMatrix c;
  SparseMatrix d;
  Load f;
  Load g;
  Vector u0;
  Vector p0;
  std::optional<MaterialParams> params;

  std::size_t n_u() const { return a.rows(); }
  std::size_t n_p() const { return b.rows(); }

  /// C + tau B
  SparseMatrix c_tau(double tau) const;

  /// Checks dimensions, symmetry of A, B, C (1e-13 relative) and positivity
  /// of a few deterministic Rayleigh quotients. Throws DimensionError or
  /// IndefiniteError.
  void validate() const;
};

/// |A u0 - D^T p0 - f(0)|
double consistency_residual(const PoroSystem& sys);

/// |B p0 - g(0) + D A^{-1} fdot0|
double assumption_residual(const PoroSystem& sys, std::span<const double> fdot0);

/// u0 := A^{-1}(f(0) + D^T p0)
void make_consistent(PoroSystem& sys);

/// The same dynamics written for (u - u_ref, p - p_ref): loads
/// f - (A u_ref - D^T p_ref) and g - B p_ref, initial state (u0 - u_ref,
/// p0 - p_ref). Trajectories of the two systems differ by (u_ref, p_ref).
PoroSystem shift_system(const PoroSystem& sys, std::span<const double> u_ref,
                        std::span<const double> p_ref);

}  // namespace poro::model
