#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "poro/linalg/sparse_matrix.hpp"

namespace oracle {

using poro::linalg::SparseMatrix;
using poro::linalg::Triplet;
using poro::linalg::Vector;

inline Eigen::MatrixXd dense(const SparseMatrix& a) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(a.rows()),
                                            static_cast<Eigen::Index>(a.cols()));
  const auto off = a.row_offsets();
  const auto col = a.col_indices();
  const auto val = a.values();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col[k])) += val[k];
    }
  }
  return m;
}

inline Eigen::VectorXd vec(const Vector& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline Vector std_vec(const Eigen::VectorXd& v) { return Vector(v.data(), v.data() + v.size()); }

inline Vector random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

/// Random sparse n x m matrix with about `per_row` entries per row.
inline SparseMatrix random_sparse(std::size_t n, std::size_t m, std::size_t per_row,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> col(0, m - 1);
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < per_row; ++k) t.push_back({i, col(rng), val(rng)});
  }
  return SparseMatrix::from_triplets(n, m, t);
}

/// 5-point Laplacian on an n x n grid with Dirichlet boundary, plus shift * I.
inline SparseMatrix laplacian_2d(std::size_t n, double shift = 0.0) {
  std::vector<Triplet> t;
  auto id = [n](std::size_t i, std::size_t j) { return i * n + j; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      t.push_back({id(i, j), id(i, j), 4.0 + shift});
      if (i > 0) t.push_back({id(i, j), id(i - 1, j), -1.0});
      if (i + 1 < n) t.push_back({id(i, j), id(i + 1, j), -1.0});
      if (j > 0) t.push_back({id(i, j), id(i, j - 1), -1.0});
      if (j + 1 < n) t.push_back({id(i, j), id(i, j + 1), -1.0});
    }
  }
  return SparseMatrix::from_triplets(n * n, n * n, t, true);
}

/// Random SPD matrix B^T B + n I stored sparse.
inline SparseMatrix random_spd(std::size_t n, std::uint64_t seed) {
  const SparseMatrix b = random_sparse(n, n, 3, seed);
  const Eigen::MatrixXd d = dense(b).transpose() * dense(b) +
                            static_cast<double>(n) * Eigen::MatrixXd::Identity(
                                                         static_cast<Eigen::Index>(n),
                                                         static_cast<Eigen::Index>(n));
  std::vector<double> rm(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rm[i * n + j] = d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return SparseMatrix::from_dense(n, n, rm, true);
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace oracle
