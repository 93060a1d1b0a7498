#include "poro/linalg/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "poro/error.hpp"
#include "poro/linalg/kernels.hpp"

namespace poro::linalg {

namespace {

double norm_in(const SparseMatrix* w, std::span<const double> v) {
  return w ? weighted_norm(*w, v) : norm2(v);
}

}  // namespace

double spectral_radius(const LinearOperator& op, std::size_t dim, const SpectralOptions& options) {
  if (dim == 0) return 0.0;
  if (options.weight && options.weight->rows() != dim) {
    throw DimensionError("spectral_radius: weight has the wrong size");
  }
  const SparseMatrix* w = options.weight;

  std::vector<Vector> starts;
  starts.emplace_back(dim, 1.0);
  {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector v(dim);
    for (auto& e : v) e = dist(rng);
    starts.push_back(std::move(v));
  }

  Vector y(dim), z(dim);
  for (Vector x : starts) {
    double nx = norm_in(w, x);
    for (auto& e : x) e /= nx;
    double estimate = -1.0;
    int calm = 0;
    bool dead = false;
    for (std::size_t it = 0; it < options.max_iter; ++it) {
      op(x, y);
      op(y, z);
      const double nz = norm_in(w, z);
      if (!std::isfinite(nz)) throw ConvergenceError("spectral_radius: iterate overflowed");
      if (nz == 0.0) {
        const double ny = norm_in(w, y);
        if (ny == 0.0 && it == 0) {
          dead = true;
          break;
        }
        return 0.0;
      }
      const double next = std::sqrt(nz);
      if (estimate >= 0.0 && std::abs(next - estimate) <= options.tol * next) {
        if (++calm >= 2) return next;
      } else {
        calm = 0;
      }
      estimate = next;
      for (std::size_t i = 0; i < dim; ++i) x[i] = z[i] / nz;
    }
    if (!dead) throw ConvergenceError("spectral_radius: no convergence within the iteration cap");
  }
  return 0.0;
}

namespace {

double w_dot(const SparseMatrix* w, std::span<const double> x, std::span<const double> y) {
  return w ? dot(x, spmv(*w, y)) : dot(x, y);
}

struct Ritz {
  double value = 0.0;
  double residual = 0.0;
};

// Extreme-modulus Ritz value of the j x j tridiagonal (alpha, beta).
Ritz extreme_ritz(const std::vector<double>& alpha, const std::vector<double>& beta,
                  double beta_next) {
  const auto j = static_cast<Eigen::Index>(alpha.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(j, j);
  for (Eigen::Index i = 0; i < j; ++i) {
    t(i, i) = alpha[static_cast<std::size_t>(i)];
    if (i + 1 < j) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  const auto& ev = es.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < j; ++i) {
    if (std::abs(ev[i]) > std::abs(ev[best])) best = i;
  }
  return {std::abs(ev[best]), std::abs(beta_next * es.eigenvectors()(j - 1, best))};
}

}  // namespace

double spectral_radius_selfadjoint(const LinearOperator& op, std::size_t dim,
                                   const SpectralOptions& options) {
  if (dim == 0) return 0.0;
  const SparseMatrix* w = options.weight;
  if (w && w->rows() != dim) throw DimensionError("spectral_radius: weight has the wrong size");
  const std::size_t max_steps = std::min({dim, std::max<std::size_t>(options.max_iter, 1), std::size_t{400}});

  std::vector<Vector> starts;
  starts.emplace_back(dim, 1.0);
  {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector v(dim);
    for (auto& e : v) e = dist(rng);
    starts.push_back(std::move(v));
  }

  double best = 0.0;
  for (Vector q : starts) {
    const double nq = std::sqrt(w_dot(w, q, q));
    for (auto& e : q) e /= nq;
    std::vector<Vector> basis{q};
    std::vector<double> alpha, beta;
    Vector z(dim);
    Ritz ritz;
    for (std::size_t j = 0; j < max_steps; ++j) {
      op(basis[j], z);
      alpha.push_back(w_dot(w, z, basis[j]));
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) axpy(-w_dot(w, z, b), b, z);
      }
      const double bn = std::sqrt(std::max(w_dot(w, z, z), 0.0));
      if (!std::isfinite(bn)) throw ConvergenceError("spectral_radius: iterate overflowed");
      const bool invariant = bn <= 1e-14 * std::max(1.0, std::abs(alpha.back()));
      const bool last = j + 1 == max_steps;
      if (invariant || last || j % 5 == 4) {
        ritz = extreme_ritz(alpha, beta, invariant ? 0.0 : bn);
        if (invariant || last || ritz.residual <= options.tol * ritz.value) break;
      }
      beta.push_back(bn);
      for (auto& e : z) e /= bn;
      basis.push_back(z);
    }
    best = std::max(best, ritz.value);
    if (best > 0.0) return best;
  }
  return best;
}

double spectral_radius(const SparseMatrix& a, const SpectralOptions& options) {
  if (!a.is_square()) throw DimensionError("spectral_radius: matrix must be square");
  return spectral_radius(
      [&a](std::span<const double> x, std::span<double> y) { spmv(a, x, y); }, a.rows(), options);
}

}  // namespace poro::linalg
