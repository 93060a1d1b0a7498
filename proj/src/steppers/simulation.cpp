#include "poro/steppers/simulation.hpp"

#include <chrono>
#include <cmath>

#include "poro/linalg/kernels.hpp"

namespace poro::steppers {

using namespace poro::linalg;

std::size_t step_count(const StepperConfig& config) {
  config.validate();
  return static_cast<std::size_t>(std::llround(config.t_end / config.tau));
}

SimulationTrace run_simulation(const PoroSystem& sys, const StepperConfig& config) {
  const StepContext ctx(sys, config);
  return run_simulation(ctx);
}

SimulationTrace run_simulation(const StepContext& ctx) {
  using Clock = std::chrono::steady_clock;
  const auto& sys = ctx.system();
  const auto& cfg = ctx.config();
  const std::size_t n_steps = step_count(cfg);
  const double limit = cfg.guard * (1.0 + weighted_norm(sys.c, sys.p0));

  SimulationTrace trace;
  trace.gamma = ctx.gamma();
  trace.times.push_back(0.0);
  trace.u_states.push_back(sys.u0);
  trace.p_states.push_back(sys.p0);
  trace.inner_residuals.emplace_back();
  trace.wall_time_per_step.push_back(0.0);

  const auto run_start = Clock::now();
  Vector u = sys.u0, p = sys.p0;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    const double t = static_cast<double>(n) * cfg.tau;
    const auto start = Clock::now();
    StepResult step = advance(ctx, t, u, p);
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();

    bool finite = true;
    for (double v : step.p) finite = finite && std::isfinite(v);
    for (double v : step.u) finite = finite && std::isfinite(v);
    if (!finite || !(weighted_norm(sys.c, step.p) <= limit)) {
      trace.diverged_at = n;
      break;
    }
    u = std::move(step.u);
    p = std::move(step.p);
    trace.steps_taken = n;
    if (n % cfg.record_every == 0 || n == n_steps) {
      trace.times.push_back(t);
      trace.u_states.push_back(u);
      trace.p_states.push_back(p);
      trace.inner_residuals.push_back(std::move(step.inner_residuals));
      trace.wall_time_per_step.push_back(elapsed);
    }
  }
  trace.total_wall_time = std::chrono::duration<double>(Clock::now() - run_start).count();
  trace.krylov_iterations = ctx.krylov_iterations();
  return trace;
}

}  // namespace poro::steppers
