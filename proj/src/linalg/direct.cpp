#include "poro/linalg/direct.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <cmath>

#include "poro/error.hpp"

namespace poro::linalg {

namespace {

Eigen::SparseMatrix<double> to_eigen(const SparseMatrix& a) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(a.nnz());
  const auto off = a.row_offsets();
  const auto col = a.col_indices();
  const auto val = a.values();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) {
      if (col[k] <= i) {
        entries.emplace_back(static_cast<int>(i), static_cast<int>(col[k]), val[k]);
      }
    }
  }
  Eigen::SparseMatrix<double> m(static_cast<int>(a.rows()), static_cast<int>(a.cols()));
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

}  // namespace

struct LdlFactorization::Impl {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower> ldlt;
};

LdlFactorization::LdlFactorization(const SparseMatrix& a)
    : n_(a.rows()), impl_(std::make_unique<Impl>()) {
  if (!a.is_square()) throw DimensionError("ldl: matrix must be square");
  if (n_ == 0) return;
  impl_->ldlt.compute(to_eigen(a));
  if (impl_->ldlt.info() != Eigen::Success) {
    throw FactorizationError("ldl: factorization failed (zero pivot)");
  }
  const Eigen::VectorXd d = impl_->ldlt.vectorD();
  const double d_max = d.cwiseAbs().maxCoeff();
  if (!(d_max > 0.0) || !std::isfinite(d_max)) {
    throw FactorizationError("ldl: singular matrix");
  }
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (std::abs(d[i]) <= 1e-14 * d_max) {
      throw FactorizationError("ldl: near-zero pivot");
    }
  }
}

LdlFactorization::~LdlFactorization() = default;
LdlFactorization::LdlFactorization(LdlFactorization&&) noexcept = default;
LdlFactorization& LdlFactorization::operator=(LdlFactorization&&) noexcept = default;

void LdlFactorization::solve(std::span<const double> b, std::span<double> x) const {
  if (b.size() != n_ || x.size() != n_) throw DimensionError("ldl: rhs size mismatch");
  if (n_ == 0) return;
  Eigen::Map<const Eigen::VectorXd> bb(b.data(), static_cast<Eigen::Index>(n_));
  Eigen::Map<Eigen::VectorXd> xx(x.data(), static_cast<Eigen::Index>(n_));
  xx = impl_->ldlt.solve(bb);
}

Vector LdlFactorization::solve(std::span<const double> b) const {
  Vector x(n_);
  solve(b, x);
  return x;
}

Vector ldl_solve(const SparseMatrix& a, std::span<const double> b) {
  if (a.rows() != b.size()) throw DimensionError("ldl_solve: rhs size mismatch");
  return LdlFactorization(a).solve(b);
}

}  // namespace poro::linalg
