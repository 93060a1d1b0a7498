#include "poro/linalg/kernels.hpp"

#include <cmath>
#include <vector>

#include "poro/error.hpp"

namespace poro::linalg {

namespace {

void check_spmv(const SparseMatrix& a, std::span<const double> x, std::span<double> y) {
  if (x.size() != a.cols() || y.size() != a.rows()) {
    throw DimensionError("spmv: dimension mismatch (" + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " times " + std::to_string(x.size()) +
                         ")");
  }
}

inline double row_dot(const SparseMatrix& a, std::size_t i, std::span<const double> x) {
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  double s = 0.0;
  for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) s += vals[k] * x[cols[k]];
  return s;
}

inline double block_dot(std::span<const double> x, std::span<const double> y,
                        std::size_t begin, std::size_t end) {
  double s = 0.0;
  for (std::size_t i = begin; i < end; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

namespace serial {

void spmv(const SparseMatrix& a, std::span<const double> x, std::span<double> y) {
  check_spmv(a, x, y);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = row_dot(a, i, x);
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
  const std::size_t n = x.size();
  double total = 0.0;
  for (std::size_t b = 0; b < n; b += kReductionBlock) {
    total += block_dot(x, y, b, std::min(n, b + kReductionBlock));
  }
  return total;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw DimensionError("axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace serial

void spmv(const SparseMatrix& a, std::span<const double> x, std::span<double> y) {
  check_spmv(a, x, y);
  const auto n = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    y[static_cast<std::size_t>(i)] = row_dot(a, static_cast<std::size_t>(i), x);
  }
}

Vector spmv(const SparseMatrix& a, std::span<const double> x) {
  Vector y(a.rows());
  spmv(a, x, y);
  return y;
}

Vector spmv_transpose(const SparseMatrix& a, std::span<const double> x) {
  if (x.size() != a.rows()) throw DimensionError("spmv_transpose: dimension mismatch");
  Vector y(a.cols(), 0.0);
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double xi = x[i];
    for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) y[cols[k]] += vals[k] * xi;
  }
  return y;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
  const std::size_t n = x.size();
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  if (blocks <= 4) return serial::dot(x, y);
  std::vector<double> partial(blocks);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kReductionBlock;
    partial[static_cast<std::size_t>(b)] =
        block_dot(x, y, begin, std::min(n, begin + kReductionBlock));
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw DimensionError("axpy: length mismatch");
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n > 16384)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    y[static_cast<std::size_t>(i)] += alpha * x[static_cast<std::size_t>(i)];
  }
}

void axpby(double alpha, std::span<const double> x, double beta, std::span<double> y) {
  if (x.size() != y.size()) throw DimensionError("axpby: length mismatch");
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n > 16384)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(i);
    y[j] = alpha * x[j] + beta * y[j];
  }
}

Vector operator+(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("vector +: length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector operator-(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("vector -: length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector operator*(double s, std::span<const double> a) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

double weighted_norm(const SparseMatrix& m, std::span<const double> v) {
  if (!m.is_square() || m.rows() != v.size()) {
    throw DimensionError("weighted_norm: dimension mismatch");
  }
  const Vector mv = spmv(m, v);
  const double q = dot(v, mv);
  const double vv = dot(v, v);
  if (q < -1e-12 * vv) {
    throw IndefiniteError("weighted_norm: v^T M v = " + std::to_string(q) + " is negative");
  }
  return q > 0.0 ? std::sqrt(q) : 0.0;
}

}  // namespace poro::linalg
