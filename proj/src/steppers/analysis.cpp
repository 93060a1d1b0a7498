#include "poro/steppers/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "poro/error.hpp"
#include "poro/linalg/direct.hpp"
#include "poro/linalg/kernels.hpp"
#include "poro/linalg/spectral.hpp"
#include "poro/steppers/schemes.hpp"

namespace poro::steppers {

using namespace poro::linalg;

struct DampedIterationOperator::Impl {
  const PoroSystem* sys;
  double gamma;
  LdlFactorization a_inv;
  LdlFactorization c_tau_inv;
};

DampedIterationOperator::DampedIterationOperator(const PoroSystem& sys, double tau, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");
  impl_ = std::make_unique<Impl>(
      Impl{&sys, gamma, LdlFactorization(sys.a), LdlFactorization(sys.c_tau(tau))});
}

DampedIterationOperator::~DampedIterationOperator() = default;
DampedIterationOperator::DampedIterationOperator(DampedIterationOperator&&) noexcept = default;

std::size_t DampedIterationOperator::dim() const {
  return impl_->sys->n_u() + impl_->sys->n_p();
}

void DampedIterationOperator::apply(std::span<const double> x, std::span<double> y) const {
  const auto& sys = *impl_->sys;
  const double g = impl_->gamma;
  const std::size_t n_u = sys.n_u(), n_p = sys.n_p();
  const auto xu = x.subspan(0, n_u);
  const auto xp = x.subspan(n_u, n_p);
  const Vector w = impl_->a_inv.solve(spmv_transpose(sys.d, xp));
  const Vector q = impl_->c_tau_inv.solve(spmv(sys.d, w));
  for (std::size_t i = 0; i < n_u; ++i) y[i] = (1.0 - g) * xu[i] + g * w[i];
  for (std::size_t i = 0; i < n_p; ++i) y[n_u + i] = (1.0 - g) * xp[i] - g * q[i];
}

DenseMatrix DampedIterationOperator::assemble() const {
  const std::size_t n = dim();
  DenseMatrix m{n, std::vector<double>(n * n)};
  Vector e(n, 0.0), col(n);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    apply(e, col);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    e[j] = 0.0;
  }
  return m;
}

double damped_splitting_radius(const PoroSystem& sys, double tau, double gamma) {
  const DampedIterationOperator op(sys, tau, gamma);
  SpectralOptions options;
  options.tol = 1e-10;
  options.max_iter = 200000;
  return spectral_radius([&op](std::span<const double> x, std::span<double> y) { op.apply(x, y); },
                         op.dim(), options);
}

double inner_coupling(const PoroSystem& sys, double tau) {
  const SparseMatrix c_tau = sys.c_tau(tau);
  const LdlFactorization a_inv(sys.a);
  const LdlFactorization c_inv(c_tau);
  SpectralOptions options;
  options.weight = &c_tau;
  return spectral_radius_selfadjoint(
      [&](std::span<const double> x, std::span<double> y) {
        c_inv.solve(spmv(sys.d, a_inv.solve(spmv_transpose(sys.d, x))), y);
      },
      sys.n_p(), options);
}

DenseMatrix recursion_matrix_t(const PoroSystem& sys, double tau) {
  const LdlFactorization a_inv(sys.a);
  const LdlFactorization c_inv(sys.c_tau(tau));
  const std::size_t n = sys.n_p();
  DenseMatrix t{n, std::vector<double>(n * n)};
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector col = c_inv.solve(spmv(sys.d, a_inv.solve(spmv_transpose(sys.d, e))));
    for (std::size_t i = 0; i < n; ++i) t(i, j) = -col[i];
    e[j] = 0.0;
  }
  return t;
}

DenseMatrix recursion_matrix_s(const PoroSystem& sys, double tau, double gamma) {
  DenseMatrix s = recursion_matrix_t(sys, tau);
  for (auto& v : s.values) v *= gamma;
  for (std::size_t i = 0; i < s.n; ++i) s(i, i) += 1.0 - gamma;
  return s;
}

namespace {

Vector dense_apply(const DenseMatrix& m, std::span<const double> x) {
  Vector y(m.n, 0.0);
  for (std::size_t i = 0; i < m.n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

RecursionCheck inner_recursion_check(const PoroSystem& sys, double tau, double gamma,
                                     std::size_t k, double t_next,
                                     std::span<const double> u_n, std::span<const double> p_n) {
  StepperConfig cfg;
  cfg.scheme = Scheme::NovelDamped;
  cfg.tau = tau;
  cfg.inner_iterations = k;
  cfg.gamma = gamma;
  const StepContext ctx(sys, cfg);
  DampedInternals internals;
  damped_step(ctx, t_next, u_n, p_n, k, gamma, &internals);

  const DenseMatrix s = recursion_matrix_s(sys, tau, gamma);
  const LdlFactorization a_inv(sys.a);
  const LdlFactorization c_inv(ctx.c_tau());
  Vector rhs = ctx.flow_rhs(t_next, u_n, p_n);
  axpy(-1.0, spmv(sys.d, a_inv.solve(sys.f.at(t_next))), rhs);
  const Vector r_tilde = c_inv.solve(rhs);

  RecursionCheck check;
  const auto& p = internals.p_iterates;
  const auto& p_hat = internals.p_hats;
  for (std::size_t j = 1; j < p.size(); ++j) {
    Vector predicted = dense_apply(s, p[j - 1]);
    axpy(gamma, r_tilde, predicted);
    check.affine_deviation = std::max(check.affine_deviation, max_abs_diff(p[j], predicted));
  }
  Vector delta = p_hat[0] - std::span<const double>(p[0]);
  Vector s_power_delta = delta;
  for (std::size_t j = 1; j < p_hat.size(); ++j) {
    s_power_delta = dense_apply(s, s_power_delta);
    const Vector increment = p_hat[j] - std::span<const double>(p[j]);
    check.increment_deviation =
        std::max(check.increment_deviation, max_abs_diff(increment, s_power_delta));
  }
  return check;
}

double stacked_error(std::span<const double> u, std::span<const double> p,
                     std::span<const double> u_ref, std::span<const double> p_ref) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += (u[i] - u_ref[i]) * (u[i] - u_ref[i]);
  for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - p_ref[i]) * (p[i] - p_ref[i]);
  return std::sqrt(s);
}

double stacked_norm(std::span<const double> u, std::span<const double> p) {
  return std::sqrt(dot(u, u) + dot(p, p));
}

double energy_error(const PoroSystem& sys, std::span<const double> u, std::span<const double> p,
                    std::span<const double> u_ref, std::span<const double> p_ref) {
  const Vector du = u - u_ref;
  const Vector dp = p - p_ref;
  const double eu = weighted_norm(sys.a, du);
  const double ep = weighted_norm(sys.b, dp);
  return std::sqrt(eu * eu + ep * ep);
}

}  // namespace poro::steppers
