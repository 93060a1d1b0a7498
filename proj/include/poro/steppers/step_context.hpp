#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <utility>

#include "poro/linalg/linear_solver.hpp"
#include "poro/model/poro_system.hpp"

namespace poro::steppers {

using linalg::SparseMatrix;
using linalg::Vector;
using model::PoroSystem;

enum class Scheme {
  ImplicitEuler,
  Drained,
  Undrained,
  FixedStrain,
  FixedStress,
  SemiExplicit,
  NovelDamped
};

std::string_view to_string(Scheme scheme);
Scheme scheme_from_string(std::string_view name);

enum class InnerMode { FixedCount, ResidualTolerance };

/// Approximation L of D A^{-1} D^T in the fixed-stress split.
enum class SchurMode { ExactDense, Diagonal, ScaledIdentity, ScaledCompressibility };
/// Approximation W of B^{-1} in the undrained split.
enum class WeightMode { ExactDense, Diagonal, ScaledIdentity };
/// Solver for the monolithic implicit Euler system.
enum class BlockSolver { Direct, MinRes };

std::string_view to_string(SchurMode mode);
SchurMode schur_mode_from_string(std::string_view name);

struct StepperConfig {
  Scheme scheme = Scheme::NovelDamped;
  double tau = 1e-2;
  double t_end = 1.0;
  /// K, inner sweeps per step for the split and damped schemes.
  std::size_t inner_iterations = 1;
  /// Relaxation of the damped scheme; unset means 2 / (2 + omega_eff).
  std::optional<double> gamma;

  InnerMode inner_mode = InnerMode::FixedCount;
  double inner_tol = 1e-8;
  std::size_t inner_max = 1000;

  linalg::SolverSettings mechanics;  // A and A + D^T W D
  linalg::SolverSettings flow{linalg::SolverMethod::Direct, linalg::PreconditionerKind::Jacobi,
                              1e-10, 5000};  // C_tau and C_tau + L

  BlockSolver block_solver = BlockSolver::Direct;
  double block_tol = 1e-10;
  std::size_t block_max_iter = 5000;

  SchurMode schur_mode = SchurMode::ExactDense;
  double schur_beta = 1.0;
  WeightMode weight_mode = WeightMode::Diagonal;
  double weight_beta = 1.0;

  /// Caps the inner Krylov iterations of all but the final sweep (0 = off).
  std::size_t inexact_cap = 0;
  /// Relaxes the final damped sweep as well. Breaks convergence; ablation only.
  bool relax_final = false;

  bool record_inner_residuals = true;
  /// Keep every n-th state in the trace (the final state is always kept).
  std::size_t record_every = 1;
  /// A run diverges once |p|_C > guard (1 + |p0|_C).
  double guard = 1e12;

  /// Throws ConfigError on tau <= 0, K = 0, gamma outside (0, 1], ...
  void validate() const;
};

/// Per-run solver state: factorizations and preconditioners for the blocks
/// the chosen scheme needs. Not shared between concurrent runs.
class StepContext {
 public:
  StepContext(const PoroSystem& sys, const StepperConfig& config);
  ~StepContext();
  StepContext(StepContext&&) noexcept;

  const PoroSystem& system() const { return *sys_; }
  const StepperConfig& config() const { return config_; }
  double tau() const { return config_.tau; }
  double gamma() const { return gamma_; }
  const SparseMatrix& c_tau() const { return c_tau_; }

  /// r = tau g(t_next) + D u_n + C p_n
  Vector flow_rhs(double t_next, std::span<const double> u_n,
                  std::span<const double> p_n) const;

  Vector solve_a(std::span<const double> rhs, std::span<const double> x0, bool capped) const;
  Vector solve_c_tau(std::span<const double> rhs, std::span<const double> x0, bool capped) const;
  /// (A + D^T W D)^{-1}
  Vector solve_undrained(std::span<const double> rhs, std::span<const double> x0) const;
  /// (C_tau + L)^{-1}
  Vector solve_fixed_stress(std::span<const double> rhs, std::span<const double> x0) const;
  Vector apply_w(std::span<const double> x) const;
  Vector apply_l(std::span<const double> x) const;

  /// Solves [[A, -D^T], [D, C_tau]] (u, p) = (f, r).
  std::pair<Vector, Vector> solve_block(std::span<const double> f, std::span<const double> r,
                                        std::span<const double> u_guess,
                                        std::span<const double> p_guess) const;

  /// |(f - A u + D^T p, r - D u - C_tau p)| / |(f, r)|
  double block_residual(std::span<const double> f, std::span<const double> r,
                        std::span<const double> u, std::span<const double> p) const;

  /// Krylov iterations spent by the block solves so far.
  std::size_t krylov_iterations() const { return krylov_iterations_; }

 private:
  struct Blocks;
  const PoroSystem* sys_;
  StepperConfig config_;
  double gamma_ = 1.0;
  SparseMatrix c_tau_;
  std::unique_ptr<Blocks> blocks_;
  mutable std::size_t krylov_iterations_ = 0;
};

}  // namespace poro::steppers
