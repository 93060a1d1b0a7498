#pragma once

#include <optional>
#include <vector>

#include "poro/experiments/csv.hpp"
#include "poro/model/poro_system.hpp"
#include "poro/steppers/step_context.hpp"

namespace poro::experiments {

struct ConvergenceRow {
  double tau = 0.0;
  /// sqrt(|u - u_ref|_A^2 + |p - p_ref|_B^2) at the final time; the guard
  /// value when the run diverged.
  double error = 0.0;
  double relative_error = 0.0;
  /// log(e_{i-1} / e_i) / log(tau_{i-1} / tau_i); empty for the first row
  /// and next to diverged rows.
  std::optional<double> eoc;
  bool diverged = false;
  double wall_time = 0.0;
};

struct ConvergenceStudy {
  double tau_ref = 0.0;
  std::vector<ConvergenceRow> rows;
};

/// Runs `config` (its tau is overridden) for each step in `taus` and
/// compares with implicit Euler at min(taus) / ref_factor. Every tau must
/// divide t_end.
ConvergenceStudy run_convergence(const model::PoroSystem& sys, const steppers::StepperConfig& config,
                                 std::vector<double> taus, double ref_factor = 64.0);

/// tau, error, relative_error, eoc, diverged, wall_time
CsvTable convergence_table(const ConvergenceStudy& study);

}  // namespace poro::experiments
