#pragma once

#include <optional>
#include <vector>

#include "poro/steppers/schemes.hpp"

namespace poro::steppers {

struct SimulationTrace {
  std::vector<double> times;
  std::vector<Vector> u_states;
  std::vector<Vector> p_states;
  /// inner_residuals[n] belongs to the step that produced times[n]; empty
  /// for the initial state.
  std::vector<std::vector<double>> inner_residuals;
  std::vector<double> wall_time_per_step;
  /// Index of the step at which the blow-up guard fired.
  std::optional<std::size_t> diverged_at;
  std::size_t steps_taken = 0;
  double gamma = 1.0;
  double total_wall_time = 0.0;
  std::size_t krylov_iterations = 0;

  const Vector& final_u() const { return u_states.back(); }
  const Vector& final_p() const { return p_states.back(); }
  double final_time() const { return times.back(); }
};

/// Number of steps round(t_end / tau).
std::size_t step_count(const StepperConfig& config);

/// Runs N = round(t_end / tau) steps from (sys.u0, sys.p0). Stops early when
/// |p|_C > guard (1 + |p0|_C) or a state turns non-finite; the offending
/// state is not recorded and diverged_at holds its step index.
SimulationTrace run_simulation(const PoroSystem& sys, const StepperConfig& config);

/// Same, reusing an existing context (its system and configuration).
SimulationTrace run_simulation(const StepContext& ctx);

}  // namespace poro::steppers
