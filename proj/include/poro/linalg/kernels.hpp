#pragma once

#include <span>

#include "poro/linalg/sparse_matrix.hpp"

namespace poro::linalg {

// Vector and SpMV kernels. The default versions are OpenMP-parallel; the ones
// in `serial` are the single-threaded reference. Both produce bit-identical
// results for any thread count: SpMV keeps the row summation order and the
// reductions sum fixed-size blocks in a fixed order.

/// Reduction block length shared by the serial and parallel paths.
inline constexpr std::size_t kReductionBlock = 1024;

void spmv(const SparseMatrix& a, std::span<const double> x, std::span<double> y);
Vector spmv(const SparseMatrix& a, std::span<const double> x);
/// y = a^T x
Vector spmv_transpose(const SparseMatrix& a, std::span<const double> x);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
/// y = alpha * x + beta * y
void axpby(double alpha, std::span<const double> x, double beta, std::span<double> y);

Vector operator+(std::span<const double> a, std::span<const double> b);
Vector operator-(std::span<const double> a, std::span<const double> b);
Vector operator*(double s, std::span<const double> a);

/// Weighted norm sqrt(v^T M v) for symmetric positive (semi)definite M.
/// Values in [-1e-12 |v|^2, 0] are clamped to zero; anything more negative
/// throws IndefiniteError.
double weighted_norm(const SparseMatrix& m, std::span<const double> v);

namespace serial {
void spmv(const SparseMatrix& a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
}  // namespace serial

}  // namespace poro::linalg
