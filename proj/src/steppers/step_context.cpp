#include "poro/steppers/step_context.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "poro/error.hpp"
#include "poro/linalg/direct.hpp"
#include "poro/linalg/kernels.hpp"
#include "poro/linalg/krylov.hpp"
#include "poro/model/coupling.hpp"

namespace poro::steppers {

using namespace poro::linalg;

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::ImplicitEuler: return "implicit-euler";
    case Scheme::Drained: return "drained";
    case Scheme::Undrained: return "undrained";
    case Scheme::FixedStrain: return "fixed-strain";
    case Scheme::FixedStress: return "fixed-stress";
    case Scheme::SemiExplicit: return "semi-explicit";
    case Scheme::NovelDamped: return "damped";
  }
  return "unknown";
}

Scheme scheme_from_string(std::string_view name) {
  for (Scheme s : {Scheme::ImplicitEuler, Scheme::Drained, Scheme::Undrained, Scheme::FixedStrain,
                   Scheme::FixedStress, Scheme::SemiExplicit, Scheme::NovelDamped}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

std::string_view to_string(SchurMode mode) {
  switch (mode) {
    case SchurMode::ExactDense: return "exact";
    case SchurMode::Diagonal: return "diagonal";
    case SchurMode::ScaledIdentity: return "scaled-identity";
    case SchurMode::ScaledCompressibility: return "scaled-compressibility";
  }
  return "unknown";
}

SchurMode schur_mode_from_string(std::string_view name) {
  for (SchurMode m : {SchurMode::ExactDense, SchurMode::Diagonal, SchurMode::ScaledIdentity,
                      SchurMode::ScaledCompressibility}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown Schur approximation '" + std::string(name) + "'");
}

void StepperConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be non-negative");
  if (inner_iterations == 0) throw ConfigError("K must be at least 1");
  if (gamma && !(*gamma > 0.0 && *gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");
  if (!(inner_tol > 0.0) || inner_max == 0) throw ConfigError("bad inner tolerance settings");
  if (!(block_tol > 0.0) || !(mechanics.tol > 0.0) || !(flow.tol > 0.0)) {
    throw ConfigError("solver tolerances must be positive");
  }
  if (record_every == 0) throw ConfigError("record_every must be at least 1");
  if (!(guard > 0.0)) throw ConfigError("guard must be positive");
  if (!(schur_beta > 0.0) || !(weight_beta > 0.0)) throw ConfigError("tuning factors must be positive");
}

struct StepContext::Blocks {
  std::optional<LinearSolver> a;
  std::optional<LinearSolver> c_tau;
  std::optional<LinearSolver> undrained;
  std::optional<LinearSolver> fixed_stress;
  std::optional<LdlFactorization> block_ldl;
  std::optional<Preconditioner> block_precond;
  SparseMatrix block;
  SparseMatrix w;
  SparseMatrix l;
};

namespace {

constexpr std::size_t kDenseLimit = 500;

// Dense n x n matrix from its columns.
SparseMatrix dense_from_columns(std::size_t n, const std::function<Vector(std::size_t)>& column) {
  std::vector<Triplet> t;
  t.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vector c = column(j);
    for (std::size_t i = 0; i < n; ++i) t.push_back({i, j, c[i]});
  }
  auto m = SparseMatrix::from_triplets(n, n, t);
  // Symmetrize against round-off.
  return add(m, m.transpose(), 0.5, 0.5).with_symmetric_flag(true);
}

}  // namespace

StepContext::StepContext(const PoroSystem& sys, const StepperConfig& config)
    : sys_(&sys), config_(config), blocks_(std::make_unique<Blocks>()) {
  config_.validate();
  if (sys.d.rows() != sys.n_p() || sys.d.cols() != sys.n_u()) {
    throw DimensionError("StepContext: D has the wrong shape");
  }
  c_tau_ = sys.c_tau(config_.tau);

  if (config_.gamma) {
    gamma_ = *config_.gamma;
  } else if (config_.scheme == Scheme::NovelDamped && config_.inner_iterations > 1) {
    gamma_ = model::relaxation_factor(model::effective_coupling(sys));
  }

  auto& bl = *blocks_;
  const std::size_t n_p = sys.n_p();
  switch (config_.scheme) {
    case Scheme::ImplicitEuler: {
      bl.block = block_symmetric(sys.a, sys.d.scaled(-1.0), c_tau_.scaled(-1.0));
      if (config_.block_solver == BlockSolver::Direct) {
        bl.block_ldl.emplace(bl.block);
      } else {
        bl.block_precond.emplace(Preconditioner::block_schur(sys.a, sys.d, c_tau_));
      }
      break;
    }
    case Scheme::Undrained: {
      switch (config_.weight_mode) {
        case WeightMode::ExactDense: {
          if (n_p > kDenseLimit) throw ConfigError("exact B^{-1} is limited to desk-scale systems");
          const LdlFactorization b_inv(sys.b);
          bl.w = dense_from_columns(n_p, [&](std::size_t j) {
            Vector e(n_p, 0.0);
            e[j] = 1.0;
            return b_inv.solve(e);
          });
          break;
        }
        case WeightMode::Diagonal: {
          Vector inv = sys.b.diagonal_entries();
          for (auto& v : inv) v = 1.0 / v;
          bl.w = SparseMatrix::diagonal(inv).with_symmetric_flag(true);
          break;
        }
        case WeightMode::ScaledIdentity:
          bl.w = SparseMatrix::identity(n_p).scaled(config_.weight_beta).with_symmetric_flag(true);
          break;
      }
      const SparseMatrix dt = sys.d.transpose();
      const SparseMatrix m = add(sys.a, multiply(dt, multiply(bl.w, sys.d)));
      bl.undrained.emplace(add(m, m.transpose(), 0.5, 0.5).with_symmetric_flag(true),
                           config_.mechanics);
      bl.c_tau.emplace(c_tau_, config_.flow);
      break;
    }
    case Scheme::FixedStress: {
      bl.a.emplace(sys.a, config_.mechanics);
      switch (config_.schur_mode) {
        case SchurMode::ExactDense: {
          if (n_p > kDenseLimit) throw ConfigError("exact D A^{-1} D^T is limited to desk-scale systems");
          const LdlFactorization a_inv(sys.a);
          bl.l = dense_from_columns(n_p, [&](std::size_t j) {
            Vector e(n_p, 0.0);
            e[j] = 1.0;
            return spmv(sys.d, a_inv.solve(spmv_transpose(sys.d, e)));
          });
          break;
        }
        case SchurMode::Diagonal: {
          Vector inv = sys.a.diagonal_entries();
          for (auto& v : inv) v = 1.0 / v;
          bl.l = multiply(scale_columns(sys.d, inv), sys.d.transpose()).with_symmetric_flag(true);
          break;
        }
        case SchurMode::ScaledIdentity:
          bl.l = SparseMatrix::identity(n_p).scaled(config_.schur_beta).with_symmetric_flag(true);
          break;
        case SchurMode::ScaledCompressibility:
          bl.l = sys.c.scaled(config_.schur_beta).with_symmetric_flag(true);
          break;
      }
      bl.fixed_stress.emplace(add(c_tau_, bl.l).with_symmetric_flag(true), config_.flow);
      break;
    }
    case Scheme::Drained:
    case Scheme::FixedStrain:
    case Scheme::SemiExplicit:
    case Scheme::NovelDamped:
      bl.a.emplace(sys.a, config_.mechanics);
      bl.c_tau.emplace(c_tau_, config_.flow);
      break;
  }
}

StepContext::~StepContext() = default;
StepContext::StepContext(StepContext&&) noexcept = default;

Vector StepContext::flow_rhs(double t_next, std::span<const double> u_n,
                             std::span<const double> p_n) const {
  Vector r = sys_->g.at(t_next);
  for (auto& v : r) v *= config_.tau;
  axpy(1.0, spmv(sys_->d, u_n), r);
  axpy(1.0, spmv(sys_->c, p_n), r);
  return r;
}

namespace {

Vector run(const LinearSolver& s, std::span<const double> rhs, std::span<const double> x0,
           std::optional<std::size_t> cap, std::size_t& counter) {
  auto res = s.solve(rhs, x0, cap);
  if (s.settings().method == SolverMethod::Iterative) counter += res.report.iterations;
  return std::move(res.x);
}

}  // namespace

Vector StepContext::solve_a(std::span<const double> rhs, std::span<const double> x0,
                            bool capped) const {
  if (!blocks_->a) throw ConfigError("scheme does not use A solves");
  std::optional<std::size_t> cap;
  if (capped && config_.inexact_cap > 0) cap = config_.inexact_cap;
  return run(*blocks_->a, rhs, x0, cap, krylov_iterations_);
}

Vector StepContext::solve_c_tau(std::span<const double> rhs, std::span<const double> x0,
                                bool capped) const {
  if (!blocks_->c_tau) throw ConfigError("scheme does not use C_tau solves");
  std::optional<std::size_t> cap;
  if (capped && config_.inexact_cap > 0) cap = config_.inexact_cap;
  return run(*blocks_->c_tau, rhs, x0, cap, krylov_iterations_);
}

Vector StepContext::solve_undrained(std::span<const double> rhs, std::span<const double> x0) const {
  if (!blocks_->undrained) throw ConfigError("scheme does not use undrained solves");
  return run(*blocks_->undrained, rhs, x0, std::nullopt, krylov_iterations_);
}

Vector StepContext::solve_fixed_stress(std::span<const double> rhs,
                                       std::span<const double> x0) const {
  if (!blocks_->fixed_stress) throw ConfigError("scheme does not use fixed-stress solves");
  return run(*blocks_->fixed_stress, rhs, x0, std::nullopt, krylov_iterations_);
}

Vector StepContext::apply_w(std::span<const double> x) const { return spmv(blocks_->w, x); }
Vector StepContext::apply_l(std::span<const double> x) const { return spmv(blocks_->l, x); }

std::pair<Vector, Vector> StepContext::solve_block(std::span<const double> f,
                                                   std::span<const double> r,
                                                   std::span<const double> u_guess,
                                                   std::span<const double> p_guess) const {
  const std::size_t n_u = sys_->n_u(), n_p = sys_->n_p();
  if (blocks_->block.rows() != n_u + n_p) throw ConfigError("scheme does not use block solves");
  Vector rhs(n_u + n_p);
  std::copy(f.begin(), f.end(), rhs.begin());
  for (std::size_t i = 0; i < n_p; ++i) rhs[n_u + i] = -r[i];
  Vector x;
  if (blocks_->block_ldl) {
    x = blocks_->block_ldl->solve(rhs);
  } else {
    Vector x0(n_u + n_p);
    std::copy(u_guess.begin(), u_guess.end(), x0.begin());
    std::copy(p_guess.begin(), p_guess.end(), x0.begin() + static_cast<std::ptrdiff_t>(n_u));
    auto res = minres_solve(blocks_->block, rhs, *blocks_->block_precond, config_.block_tol,
                            config_.block_max_iter, x0);
    krylov_iterations_ += res.report.iterations;
    x = std::move(res.x);
  }
  Vector u(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n_u));
  Vector p(x.begin() + static_cast<std::ptrdiff_t>(n_u), x.end());
  return {std::move(u), std::move(p)};
}

double StepContext::block_residual(std::span<const double> f, std::span<const double> r,
                                   std::span<const double> u, std::span<const double> p) const {
  Vector r1 = spmv(sys_->a, u);
  const Vector dtp = spmv_transpose(sys_->d, p);
  Vector r2 = spmv(sys_->d, u);
  const Vector cp = spmv(c_tau_, p);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < r1.size(); ++i) {
    const double e = f[i] - r1[i] + dtp[i];
    num += e * e;
    den += f[i] * f[i];
  }
  for (std::size_t i = 0; i < r2.size(); ++i) {
    const double e = r[i] - r2[i] - cp[i];
    num += e * e;
    den += r[i] * r[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace poro::steppers
