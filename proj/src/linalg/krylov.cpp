#include "poro/linalg/krylov.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "poro/error.hpp"
#include "poro/linalg/kernels.hpp"

namespace poro::linalg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_inputs(const SparseMatrix& a, std::span<const double> b, const Preconditioner& p,
                  double tol, std::span<const double> x0, const char* who) {
  if (!a.is_square() || a.rows() != b.size() || p.size() != b.size()) {
    throw DimensionError(std::string(who) + ": dimension mismatch");
  }
  if (!x0.empty() && x0.size() != b.size()) {
    throw DimensionError(std::string(who) + ": initial guess has the wrong length");
  }
  if (!(tol > 0.0)) throw ConfigError(std::string(who) + ": tolerance must be positive");
}

double true_relative_residual(const SparseMatrix& a, std::span<const double> b,
                              std::span<const double> x, double b_norm) {
  Vector r = spmv(a, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return norm2(r) / b_norm;
}

}  // namespace

SolveResult cg_solve(const SparseMatrix& a, std::span<const double> b,
                     const Preconditioner& p, double tol, std::size_t max_iter,
                     std::span<const double> x0) {
  const auto start = Clock::now();
  check_inputs(a, b, p, tol, x0, "cg_solve");
  const std::size_t n = b.size();
  SolveResult out;
  out.x.assign(n, 0.0);

  const double b_norm = norm2(b);
  if (b_norm == 0.0) {
    out.report = {0, 0.0, true, seconds_since(start)};
    return out;
  }
  if (!x0.empty()) out.x.assign(x0.begin(), x0.end());

  Vector r = spmv(a, out.x);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  double rel = norm2(r) / b_norm;
  if (rel <= tol) {
    out.report = {0, rel, true, seconds_since(start)};
    return out;
  }

  Vector z = p.apply(r);
  Vector dir = z;
  Vector ad(n);
  double rz = dot(r, z);
  if (!(rz > 0.0)) throw BreakdownError("cg_solve: preconditioner is not positive definite");

  std::size_t it = 0;
  while (it < max_iter) {
    spmv(a, dir, ad);
    const double curvature = dot(dir, ad);
    if (!(curvature > 0.0)) {
      throw BreakdownError("cg_solve: non-positive curvature, matrix is not SPD");
    }
    const double alpha = rz / curvature;
    axpy(alpha, dir, out.x);
    axpy(-alpha, ad, r);
    ++it;
    rel = norm2(r) / b_norm;
    if (rel <= tol) {
      rel = true_relative_residual(a, b, out.x, b_norm);
      if (rel <= tol) break;
      Vector ax = spmv(a, out.x);
      for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ax[i];
    }
    p.apply(r, z);
    const double rz_next = dot(r, z);
    if (!(rz_next > 0.0)) {
      if (rz_next == 0.0) break;
      throw BreakdownError("cg_solve: preconditioner is not positive definite");
    }
    axpby(1.0, z, rz_next / rz, dir);
    rz = rz_next;
  }
  if (rel > tol) rel = true_relative_residual(a, b, out.x, b_norm);
  out.report = {it, rel, rel <= tol, seconds_since(start)};
  return out;
}

SolveResult minres_solve(const SparseMatrix& s, std::span<const double> b,
                         const Preconditioner& p, double tol, std::size_t max_iter,
                         std::span<const double> x0) {
  const auto start = Clock::now();
  check_inputs(s, b, p, tol, x0, "minres_solve");
  const std::size_t n = b.size();
  SolveResult out;
  out.x.assign(n, 0.0);

  const double b_norm = norm2(b);
  if (b_norm == 0.0) {
    out.report = {0, 0.0, true, seconds_since(start)};
    return out;
  }
  if (!x0.empty()) out.x.assign(x0.begin(), x0.end());

  std::size_t total_it = 0;
  double rel = true_relative_residual(s, b, out.x, b_norm);

  // Each cycle restarts from the explicit residual.
  for (int cycle = 0; cycle < 8 && rel > tol && total_it < max_iter; ++cycle) {
    Vector r1 = spmv(s, out.x);
    for (std::size_t i = 0; i < n; ++i) r1[i] = b[i] - r1[i];
    Vector y = p.apply(r1);
    double beta1 = dot(r1, y);
    if (beta1 < 0.0) throw BreakdownError("minres_solve: preconditioner is not positive definite");
    if (beta1 == 0.0) break;
    beta1 = std::sqrt(beta1);

    // Paige-Saunders recurrences in the preconditioned Lanczos basis.
    Vector r2 = r1;
    Vector v(n), w(n, 0.0), w1(n, 0.0), w2(n, 0.0);
    double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0;
    double phibar = beta1, cs = -1.0, sn = 0.0;
    const double phi0 = beta1;
    const double target = tol * 0.5;

    std::size_t cycle_it = 0;
    while (total_it < max_iter) {
      const double s_inv = 1.0 / beta;
      for (std::size_t i = 0; i < n; ++i) v[i] = s_inv * y[i];
      spmv(s, v, y);
      if (cycle_it > 0) axpy(-beta / oldb, r1, y);
      const double alfa = dot(v, y);
      axpy(-alfa / beta, r2, y);
      r1.swap(r2);
      r2 = y;
      p.apply(r2, y);
      oldb = beta;
      double beta_sq = dot(r2, y);
      if (beta_sq < 0.0) {
        throw BreakdownError("minres_solve: preconditioner is not positive definite");
      }
      beta = std::sqrt(beta_sq);

      const double oldeps = epsln;
      const double delta = cs * dbar + sn * alfa;
      const double gbar = sn * dbar - cs * alfa;
      epsln = sn * beta;
      dbar = -cs * beta;
      const double gamma = std::max(std::hypot(gbar, beta), 1e-300);
      cs = gbar / gamma;
      sn = beta / gamma;
      const double phi = cs * phibar;
      phibar = sn * phibar;

      const double denom = 1.0 / gamma;
      w1.swap(w2);
      w2.swap(w);
      for (std::size_t i = 0; i < n; ++i) {
        w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) * denom;
        out.x[i] += phi * w[i];
      }
      ++total_it;
      ++cycle_it;

      if (phibar <= target * phi0 || beta == 0.0) break;
      if (total_it % 25 == 0) {
        rel = true_relative_residual(s, b, out.x, b_norm);
        if (rel <= tol) break;
      }
    }
    rel = true_relative_residual(s, b, out.x, b_norm);
  }
  out.report = {total_it, rel, rel <= tol, seconds_since(start)};
  return out;
}

}  // namespace poro::linalg
