#pragma once

#include <memory>
#include <span>
#include <vector>

#include "poro/steppers/step_context.hpp"

namespace poro::steppers {

/// Row-major square matrix for desk-scale operator analysis.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values[i * n + j]; }
};

/// x -> M^{-1} N x for the damped splitting with relaxation gamma:
/// (u, p) -> ((1 - gamma) u + gamma A^{-1} D^T p, (1 - gamma) p - gamma C_tau^{-1} D A^{-1} D^T p).
class DampedIterationOperator {
 public:
  DampedIterationOperator(const PoroSystem& sys, double tau, double gamma);
  ~DampedIterationOperator();
  DampedIterationOperator(DampedIterationOperator&&) noexcept;

  void apply(std::span<const double> x, std::span<double> y) const;
  std::size_t dim() const;
  DenseMatrix assemble() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Power-iteration estimate of rho(M^{-1} N) for the damped splitting.
double damped_splitting_radius(const PoroSystem& sys, double tau, double gamma);

/// rho(C_tau^{-1} D A^{-1} D^T), the coupling seen by the inner iteration.
double inner_coupling(const PoroSystem& sys, double tau);

/// T = -C_tau^{-1} D A^{-1} D^T and S = gamma T + (1 - gamma) I, assembled densely.
DenseMatrix recursion_matrix_t(const PoroSystem& sys, double tau);
DenseMatrix recursion_matrix_s(const PoroSystem& sys, double tau, double gamma);

struct RecursionCheck {
  /// max_k |p_k - (S p_{k-1} + gamma r~)|_inf over the damped sweeps.
  double affine_deviation = 0.0;
  /// max_k |(p^_{k+1} - p_k) - S^k delta_p|_inf with delta_p = p^_1 - p_0.
  double increment_deviation = 0.0;
  double max() const { return affine_deviation > increment_deviation ? affine_deviation : increment_deviation; }
};

/// Runs one damped step (direct solvers) from (u_n, p_n) to t_next and
/// compares its internal pressure iterates with the closed-form recursion
///   p_k = S p_{k-1} + gamma r~,   r~ = C_tau^{-1}(tau g + D u_n + C p_n - D A^{-1} f).
RecursionCheck inner_recursion_check(const PoroSystem& sys, double tau, double gamma,
                                     std::size_t k, double t_next,
                                     std::span<const double> u_n, std::span<const double> p_n);

/// |(u - u_ref, p - p_ref)|_2 of the stacked state.
double stacked_error(std::span<const double> u, std::span<const double> p,
                     std::span<const double> u_ref, std::span<const double> p_ref);
/// |(u_ref, p_ref)|_2
double stacked_norm(std::span<const double> u, std::span<const double> p);

/// sqrt(|u - u_ref|_A^2 + |p - p_ref|_B^2)
double energy_error(const PoroSystem& sys, std::span<const double> u, std::span<const double> p,
                    std::span<const double> u_ref, std::span<const double> p_ref);

}  // namespace poro::steppers
