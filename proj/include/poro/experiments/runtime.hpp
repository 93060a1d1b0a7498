#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poro/experiments/csv.hpp"
#include "poro/experiments/tissue.hpp"

namespace poro::experiments {

struct RuntimeConfig {
  TissueConfig tissue;
  std::vector<double> taus{7.5, 3.75, 1.875, 0.9375, 0.46875};
  /// Step of the implicit Euler reference (direct solver).
  double tau_ref = 0.1;
  /// Relative residual tolerance of every Krylov solve, both schemes.
  double krylov_tol = 1e-8;
  std::size_t repeats = 3;
  double target_error = 1e-3;
  /// Krylov cap on the damped sweeps before the final one.
  std::size_t inexact_cap = 10;
  /// Shuffles the order of the timed runs.
  std::uint64_t seed = 1;
};

struct RuntimeRow {
  /// "damped" (iterative inner solves) or "implicit-euler" (MinRes with the
  /// block Schur preconditioner)
  std::string scheme;
  std::size_t k = 0;
  double tau = 0.0;
  double error = 0.0;
  bool diverged = false;
  /// Median wall time over the repeats, solver setup included.
  double wall_time = 0.0;
  std::size_t krylov_iterations = 0;
};

struct RuntimeStudy {
  TissueProblem problem;
  std::size_t k = 0;
  std::vector<RuntimeRow> rows;
  /// Wall time at the target error, interpolated log-log between the two
  /// step sizes whose errors bracket it; the coarsest run's time when that
  /// one already meets the target; empty when no run does.
  std::optional<double> damped_time_at_target;
  std::optional<double> implicit_euler_time_at_target;
};

/// Runs sequentially. The reference is direct implicit Euler at tau_ref;
/// errors use tissue_error.
RuntimeStudy run_runtime(const RuntimeConfig& config);

/// scheme, K, tau, error, diverged, wall_time, krylov_iterations
CsvTable runtime_table(const std::vector<RuntimeRow>& rows);

/// Interpolated wall time at `target` over (error, time) points ordered by
/// decreasing step size.
std::optional<double> time_at_error(const std::vector<RuntimeRow>& rows, double target);

/// scheme, target_error, time_at_target, reached
CsvTable runtime_summary_table(const RuntimeStudy& study, double target_error);

}  // namespace poro::experiments
