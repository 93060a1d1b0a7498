#include "poro/linalg/preconditioner.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "poro/error.hpp"
#include "poro/linalg/kernels.hpp"

namespace poro::linalg {

std::string_view to_string(PreconditionerKind kind) {
  switch (kind) {
    case PreconditionerKind::Identity: return "identity";
    case PreconditionerKind::Jacobi: return "jacobi";
    case PreconditionerKind::IncompleteCholesky0: return "ic0";
    case PreconditionerKind::BlockSchurDiagonal: return "block-schur";
  }
  return "unknown";
}

PreconditionerKind preconditioner_from_string(std::string_view name) {
  if (name == "identity") return PreconditionerKind::Identity;
  if (name == "jacobi") return PreconditionerKind::Jacobi;
  if (name == "ic0") return PreconditionerKind::IncompleteCholesky0;
  if (name == "block-schur") return PreconditionerKind::BlockSchurDiagonal;
  throw ConfigError("unknown preconditioner '" + std::string(name) + "'");
}

IncompleteCholesky::IncompleteCholesky(const SparseMatrix& a) : n_(a.rows()) {
  if (!a.is_square()) throw DimensionError("IC(0) needs a square matrix");
  double shift = 0.0;
  for (int attempt = 0; attempt < 40; ++attempt) {
    if (try_factor(a, shift)) {
      shift_ = shift;
      return;
    }
    shift = shift == 0.0 ? 1e-3 : 2.0 * shift;
  }
  throw BreakdownError("IC(0) failed to produce positive pivots even with a large shift");
}

bool IncompleteCholesky::try_factor(const SparseMatrix& a, double shift) {
  const auto ao = a.row_offsets();
  const auto ac = a.col_indices();
  const auto av = a.values();

  offsets_.assign(n_ + 1, 0);
  cols_.clear();
  vals_.clear();
  for (std::size_t i = 0; i < n_; ++i) {
    bool has_diag = false;
    for (std::size_t k = ao[i]; k < ao[i + 1] && ac[k] <= i; ++k) {
      cols_.push_back(ac[k]);
      vals_.push_back(ac[k] == i ? av[k] * (1.0 + shift) : av[k]);
      has_diag = has_diag || ac[k] == i;
    }
    if (!has_diag) return false;
    offsets_[i + 1] = cols_.size();
  }

  // Row-oriented IC(0): l_ij = (a_ij - sum_k l_ik l_jk) / l_jj on the pattern.
  std::vector<double> dense_row(n_, 0.0);
  std::vector<char> in_row(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t begin = offsets_[i], end = offsets_[i + 1];
    for (std::size_t k = begin; k < end; ++k) {
      dense_row[cols_[k]] = vals_[k];
      in_row[cols_[k]] = 1;
    }
    for (std::size_t k = begin; k + 1 < end; ++k) {
      const std::size_t j = cols_[k];
      // Subtract sum over m < j of l_im l_jm (both in pattern).
      double s = dense_row[j];
      for (std::size_t q = offsets_[j]; q + 1 < offsets_[j + 1]; ++q) {
        const std::size_t m = cols_[q];
        if (in_row[m]) s -= dense_row[m] * vals_[q];
      }
      dense_row[j] = s / vals_[offsets_[j + 1] - 1];
    }
    double diag = dense_row[i];
    for (std::size_t k = begin; k + 1 < end; ++k) diag -= dense_row[cols_[k]] * dense_row[cols_[k]];
    for (std::size_t k = begin; k < end; ++k) {
      vals_[k] = dense_row[cols_[k]];
      dense_row[cols_[k]] = 0.0;
      in_row[cols_[k]] = 0;
    }
    if (!(diag > 0.0) || !std::isfinite(diag)) return false;
    vals_[end - 1] = std::sqrt(diag);
  }
  return true;
}

void IncompleteCholesky::apply(std::span<const double> r, std::span<double> z) const {
  if (r.size() != n_ || z.size() != n_) throw DimensionError("IC(0) apply: size mismatch");
  // Forward solve L y = r.
  for (std::size_t i = 0; i < n_; ++i) {
    double s = r[i];
    const std::size_t end = offsets_[i + 1] - 1;
    for (std::size_t k = offsets_[i]; k < end; ++k) s -= vals_[k] * z[cols_[k]];
    z[i] = s / vals_[end];
  }
  // Backward solve L^T z = y, column-oriented over the rows of L.
  for (std::size_t ii = n_; ii-- > 0;) {
    const std::size_t end = offsets_[ii + 1] - 1;
    z[ii] /= vals_[end];
    const double zi = z[ii];
    for (std::size_t k = offsets_[ii]; k < end; ++k) z[cols_[k]] -= vals_[k] * zi;
  }
}

struct Preconditioner::Impl {
  Vector inv_diag;                          // Jacobi
  std::optional<IncompleteCholesky> ic;     // IC0, or the u-block of BlockSchur
  std::optional<IncompleteCholesky> ic_schur;
  std::size_t n_u = 0;
};

Preconditioner::Preconditioner(PreconditionerKind kind, std::size_t n,
                               std::shared_ptr<const Impl> impl)
    : kind_(kind), n_(n), impl_(std::move(impl)) {}

Preconditioner Preconditioner::identity(std::size_t n) {
  return {PreconditionerKind::Identity, n, std::make_shared<Impl>()};
}

Preconditioner Preconditioner::jacobi(const SparseMatrix& a) {
  auto impl = std::make_shared<Impl>();
  impl->inv_diag = a.diagonal_entries();
  for (double& d : impl->inv_diag) {
    if (!(d > 0.0)) throw BreakdownError("Jacobi preconditioner needs a positive diagonal");
    d = 1.0 / d;
  }
  return {PreconditionerKind::Jacobi, a.rows(), std::move(impl)};
}

Preconditioner Preconditioner::incomplete_cholesky(const SparseMatrix& a) {
  auto impl = std::make_shared<Impl>();
  impl->ic.emplace(a);
  return {PreconditionerKind::IncompleteCholesky0, a.rows(), std::move(impl)};
}

Preconditioner Preconditioner::block_schur(const SparseMatrix& a, const SparseMatrix& d,
                                           const SparseMatrix& c_tau) {
  if (d.cols() != a.rows() || d.rows() != c_tau.rows()) {
    throw DimensionError("block_schur: incompatible blocks");
  }
  Vector inv_diag_a = a.diagonal_entries();
  for (double& v : inv_diag_a) {
    if (!(v > 0.0)) throw BreakdownError("block_schur: A needs a positive diagonal");
    v = 1.0 / v;
  }
  const SparseMatrix schur =
      add(c_tau, multiply(scale_columns(d, inv_diag_a), d.transpose())).with_symmetric_flag(true);
  auto impl = std::make_shared<Impl>();
  impl->ic.emplace(a);
  impl->ic_schur.emplace(schur);
  impl->n_u = a.rows();
  return {PreconditionerKind::BlockSchurDiagonal, a.rows() + c_tau.rows(), std::move(impl)};
}

Preconditioner Preconditioner::make(PreconditionerKind kind, const SparseMatrix& a) {
  switch (kind) {
    case PreconditionerKind::Identity: return identity(a.rows());
    case PreconditionerKind::Jacobi: return jacobi(a);
    case PreconditionerKind::IncompleteCholesky0: return incomplete_cholesky(a);
    case PreconditionerKind::BlockSchurDiagonal:
      throw ConfigError("block-schur needs the block factory");
  }
  throw ConfigError("unknown preconditioner kind");
}

void Preconditioner::apply(std::span<const double> r, std::span<double> z) const {
  if (r.size() != n_ || z.size() != n_) throw DimensionError("preconditioner: size mismatch");
  switch (kind_) {
    case PreconditionerKind::Identity:
      std::copy(r.begin(), r.end(), z.begin());
      return;
    case PreconditionerKind::Jacobi:
      for (std::size_t i = 0; i < n_; ++i) z[i] = impl_->inv_diag[i] * r[i];
      return;
    case PreconditionerKind::IncompleteCholesky0:
      impl_->ic->apply(r, z);
      return;
    case PreconditionerKind::BlockSchurDiagonal: {
      const std::size_t nu = impl_->n_u;
      impl_->ic->apply(r.subspan(0, nu), z.subspan(0, nu));
      impl_->ic_schur->apply(r.subspan(nu), z.subspan(nu));
      return;
    }
  }
}

Vector Preconditioner::apply(std::span<const double> r) const {
  Vector z(r.size());
  apply(r, z);
  return z;
}

}  // namespace poro::linalg
