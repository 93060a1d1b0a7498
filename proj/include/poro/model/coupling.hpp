#pragma once

#include "poro/model/material.hpp"
#include "poro/model/poro_system.hpp"

namespace poro::model {

/// alpha^2 M / (mu + lambda)
double coupling_parameter(const MaterialParams& params);

/// rho(C^{-1} D A^{-1} D^T) by Lanczos in the C inner product.
double effective_coupling(const PoroSystem& sys);

/// 2 / (2 + omega)
double relaxation_factor(double omega);

/// Smallest K >= 1 with omega^K / (2 + omega)^(K-1) < 1 (integer search on
/// the inequality itself; equality does not count).
std::size_t iteration_bound(double omega);

/// 1 + log(omega) / (log(omega + 2) - log(omega)); the real-valued K(omega).
double iteration_bound_closed_form(double omega);

/// Largest omega with omega^K / (2 + omega)^(K-1) < 1, i.e. the root of
/// K log(omega) = (K - 1) log(2 + omega), by bisection to ~1e-14.
double iteration_threshold(std::size_t k);

struct CouplingReport {
  double omega_formula = 0.0;
  double omega_effective = 0.0;
  double gamma = 1.0;
  std::size_t k_min = 1;
};

/// omega_formula from the material parameters (0 when absent); gamma and
/// k_min are derived from omega_effective.
CouplingReport coupling_report(const PoroSystem& sys);

}  // namespace poro::model
