#pragma once

#include <span>
#include <vector>

#include "poro/steppers/step_context.hpp"

namespace poro::steppers {

struct StepResult {
  Vector u;
  Vector p;
  /// Relative block residual of the implicit Euler system after each sweep.
  std::vector<double> inner_residuals;
};

/// Internal pressure iterates of one damped step:
/// p_iterates = p_0 .. p_{K-1} (p_0 = p_n), p_hats = p^_1 .. p^_K (p^_K = p^{n+1}).
struct DampedInternals {
  std::vector<Vector> p_iterates;
  std::vector<Vector> p_hats;
};

/// One step of implicit Euler on the monolithic block system.
StepResult implicit_euler_step(const StepContext& ctx, double t_next, std::span<const double> u_n,
                               std::span<const double> p_n);

/// Drained, undrained, fixed-strain or fixed-stress inner iteration started
/// from (u_n, p_n). The scheme, K and the inner mode come from ctx.config().
StepResult split_iterative_step(const StepContext& ctx, double t_next,
                                std::span<const double> u_n, std::span<const double> p_n);

/// A u = f + D^T p_n, then C_tau p = tau g + D u_n + C p_n - D u.
StepResult semi_explicit_step(const StepContext& ctx, double t_next,
                              std::span<const double> u_n, std::span<const double> p_n);

/// K - 1 damped sweeps followed by one undamped sweep.
StepResult damped_step(const StepContext& ctx, double t_next, std::span<const double> u_n,
                       std::span<const double> p_n, std::size_t k, double gamma,
                       DampedInternals* internals = nullptr);

/// The damped step for K = 2 written out without a loop.
StepResult damped_step_k2(const StepContext& ctx, double t_next, std::span<const double> u_n,
                          std::span<const double> p_n, double gamma);

/// Dispatches on ctx.config().scheme.
StepResult advance(const StepContext& ctx, double t_next, std::span<const double> u_n,
                   std::span<const double> p_n);

}  // namespace poro::steppers
