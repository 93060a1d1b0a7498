#include "poro/steppers/schemes.hpp"

#include <tuple>

#include "poro/error.hpp"
#include "poro/linalg/kernels.hpp"

namespace poro::steppers {

using namespace poro::linalg;

namespace {

// f + D^T p
Vector mechanics_rhs(const StepContext& ctx, std::span<const double> f,
                     std::span<const double> p) {
  Vector rhs(f.begin(), f.end());
  axpy(1.0, spmv_transpose(ctx.system().d, p), rhs);
  return rhs;
}

// r - D u
Vector flow_rhs_minus(const StepContext& ctx, std::span<const double> r,
                      std::span<const double> u) {
  Vector rhs(r.begin(), r.end());
  axpy(-1.0, spmv(ctx.system().d, u), rhs);
  return rhs;
}

// gamma a + (1 - gamma) b
Vector relax(double gamma, std::span<const double> a, std::span<const double> b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = gamma * a[i] + (1.0 - gamma) * b[i];
  return out;
}

void record(const StepContext& ctx, StepResult& out, std::span<const double> f,
            std::span<const double> r, std::span<const double> u, std::span<const double> p) {
  if (ctx.config().record_inner_residuals) {
    out.inner_residuals.push_back(ctx.block_residual(f, r, u, p));
  }
}

void check_sizes(const StepContext& ctx, std::span<const double> u_n,
                 std::span<const double> p_n) {
  if (u_n.size() != ctx.system().n_u() || p_n.size() != ctx.system().n_p()) {
    throw DimensionError("step: state has the wrong length");
  }
}

}  // namespace

StepResult implicit_euler_step(const StepContext& ctx, double t_next, std::span<const double> u_n,
                               std::span<const double> p_n) {
  check_sizes(ctx, u_n, p_n);
  const Vector f = ctx.system().f.at(t_next);
  const Vector r = ctx.flow_rhs(t_next, u_n, p_n);
  StepResult out;
  std::tie(out.u, out.p) = ctx.solve_block(f, r, u_n, p_n);
  record(ctx, out, f, r, out.u, out.p);
  return out;
}

StepResult split_iterative_step(const StepContext& ctx, double t_next,
                                std::span<const double> u_n, std::span<const double> p_n) {
  check_sizes(ctx, u_n, p_n);
  const auto& cfg = ctx.config();
  const auto& d = ctx.system().d;
  const Vector f = ctx.system().f.at(t_next);
  const Vector r = ctx.flow_rhs(t_next, u_n, p_n);
  const bool by_tol = cfg.inner_mode == InnerMode::ResidualTolerance;
  const std::size_t sweeps = by_tol ? cfg.inner_max : cfg.inner_iterations;

  StepResult out;
  Vector u(u_n.begin(), u_n.end());
  Vector p(p_n.begin(), p_n.end());
  for (std::size_t k = 0; k < sweeps; ++k) {
    const bool capped = !by_tol && k + 1 < sweeps;
    switch (cfg.scheme) {
      case Scheme::Drained:
        u = ctx.solve_a(mechanics_rhs(ctx, f, p), u, capped);
        p = ctx.solve_c_tau(flow_rhs_minus(ctx, r, u), p, capped);
        break;
      case Scheme::Undrained: {
        Vector rhs = mechanics_rhs(ctx, f, p);
        axpy(1.0, spmv_transpose(d, ctx.apply_w(spmv(d, u))), rhs);
        u = ctx.solve_undrained(rhs, u);
        p = ctx.solve_c_tau(flow_rhs_minus(ctx, r, u), p, capped);
        break;
      }
      case Scheme::FixedStrain:
        p = ctx.solve_c_tau(flow_rhs_minus(ctx, r, u), p, capped);
        u = ctx.solve_a(mechanics_rhs(ctx, f, p), u, capped);
        break;
      case Scheme::FixedStress: {
        Vector rhs = flow_rhs_minus(ctx, r, u);
        axpy(1.0, ctx.apply_l(p), rhs);
        p = ctx.solve_fixed_stress(rhs, p);
        u = ctx.solve_a(mechanics_rhs(ctx, f, p), u, capped);
        break;
      }
      default:
        throw ConfigError("split_iterative_step: not a splitting scheme");
    }
    if (by_tol) {
      const double res = ctx.block_residual(f, r, u, p);
      out.inner_residuals.push_back(res);
      if (res <= cfg.inner_tol) break;
      if (!(res < 1e12)) break;
    } else {
      record(ctx, out, f, r, u, p);
    }
  }
  out.u = std::move(u);
  out.p = std::move(p);
  return out;
}

StepResult semi_explicit_step(const StepContext& ctx, double t_next,
                              std::span<const double> u_n, std::span<const double> p_n) {
  check_sizes(ctx, u_n, p_n);
  const Vector f = ctx.system().f.at(t_next);
  const Vector r = ctx.flow_rhs(t_next, u_n, p_n);
  StepResult out;
  out.u = ctx.solve_a(mechanics_rhs(ctx, f, p_n), u_n, false);
  out.p = ctx.solve_c_tau(flow_rhs_minus(ctx, r, out.u), p_n, false);
  record(ctx, out, f, r, out.u, out.p);
  return out;
}

StepResult damped_step(const StepContext& ctx, double t_next, std::span<const double> u_n,
                       std::span<const double> p_n, std::size_t k, double gamma,
                       DampedInternals* internals) {
  check_sizes(ctx, u_n, p_n);
  if (k == 0) throw ConfigError("damped_step: K must be at least 1");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("damped_step: gamma must lie in (0, 1]");
  const Vector f = ctx.system().f.at(t_next);
  const Vector r = ctx.flow_rhs(t_next, u_n, p_n);

  StepResult out;
  Vector u(u_n.begin(), u_n.end());
  Vector p(p_n.begin(), p_n.end());
  if (internals) {
    internals->p_iterates.assign(1, p);
    internals->p_hats.clear();
  }
  for (std::size_t sweep = 0; sweep + 1 < k; ++sweep) {
    u = ctx.solve_a(mechanics_rhs(ctx, f, p), u, true);
    const Vector p_hat = ctx.solve_c_tau(flow_rhs_minus(ctx, r, u), p, true);
    p = relax(gamma, p_hat, p);
    if (internals) {
      internals->p_hats.push_back(p_hat);
      internals->p_iterates.push_back(p);
    }
    record(ctx, out, f, r, u, p);
  }
  out.u = ctx.solve_a(mechanics_rhs(ctx, f, p), u, false);
  out.p = ctx.solve_c_tau(flow_rhs_minus(ctx, r, out.u), p, false);
  if (internals) internals->p_hats.push_back(out.p);
  if (ctx.config().relax_final) out.p = relax(gamma, out.p, p);
  record(ctx, out, f, r, out.u, out.p);
  return out;
}

StepResult damped_step_k2(const StepContext& ctx, double t_next, std::span<const double> u_n,
                          std::span<const double> p_n, double gamma) {
  check_sizes(ctx, u_n, p_n);
  const Vector f = ctx.system().f.at(t_next);
  const Vector r = ctx.flow_rhs(t_next, u_n, p_n);
  StepResult out;
  const Vector u_half = ctx.solve_a(mechanics_rhs(ctx, f, p_n), u_n, true);
  const Vector p_half = ctx.solve_c_tau(flow_rhs_minus(ctx, r, u_half), p_n, true);
  const Vector p_mix = relax(gamma, p_half, p_n);
  record(ctx, out, f, r, u_half, p_mix);
  out.u = ctx.solve_a(mechanics_rhs(ctx, f, p_mix), u_half, false);
  out.p = ctx.solve_c_tau(flow_rhs_minus(ctx, r, out.u), p_mix, false);
  record(ctx, out, f, r, out.u, out.p);
  return out;
}

StepResult advance(const StepContext& ctx, double t_next, std::span<const double> u_n,
                   std::span<const double> p_n) {
  const auto& cfg = ctx.config();
  switch (cfg.scheme) {
    case Scheme::ImplicitEuler: return implicit_euler_step(ctx, t_next, u_n, p_n);
    case Scheme::SemiExplicit: return semi_explicit_step(ctx, t_next, u_n, p_n);
    case Scheme::NovelDamped:
      return damped_step(ctx, t_next, u_n, p_n, cfg.inner_iterations, ctx.gamma());
    default: return split_iterative_step(ctx, t_next, u_n, p_n);
  }
}

}  // namespace poro::steppers
