#include "poro/model/poro_system.hpp"

#include <random>
#include <string>

#include "poro/error.hpp"
#include "poro/linalg/direct.hpp"
#include "poro/linalg/kernels.hpp"

namespace poro::model {

using namespace poro::linalg;

SparseMatrix PoroSystem::c_tau(double tau) const {
  return add(c, b, 1.0, tau).with_symmetric_flag(true);
}

namespace {

void check_spd(const SparseMatrix& m, const char* name) {
  if (!m.check_symmetry(1e-13)) {
    throw IndefiniteError(std::string(name) + " is not symmetric");
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(m.rows());
  for (int trial = 0; trial < 4; ++trial) {
    for (auto& e : v) e = dist(rng);
    if (!(dot(v, spmv(m, v)) > 0.0)) {
      throw IndefiniteError(std::string(name) + " is not positive definite");
    }
  }
}

}  // namespace

void PoroSystem::validate() const {
  const std::size_t nu = n_u(), np = n_p();
  if (!a.is_square() || !b.is_square() || c.rows() != np || c.cols() != np ||
      d.rows() != np || d.cols() != nu) {
    throw DimensionError("PoroSystem: block dimensions are inconsistent");
  }
  if (f.dim() != nu || g.dim() != np || u0.size() != nu || p0.size() != np) {
    throw DimensionError("PoroSystem: load or initial data has the wrong length");
  }
  check_spd(a, "A");
  check_spd(b, "B");
  check_spd(c, "C");
}

double consistency_residual(const PoroSystem& sys) {
  Vector r = spmv(sys.a, sys.u0);
  const Vector dtp = spmv_transpose(sys.d, sys.p0);
  const Vector f0 = sys.f.at(0.0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= dtp[i] + f0[i];
  return norm2(r);
}

double assumption_residual(const PoroSystem& sys, std::span<const double> fdot0) {
  if (fdot0.size() != sys.n_u()) throw DimensionError("assumption_residual: bad fdot0");
  Vector r = spmv(sys.b, sys.p0);
  const Vector g0 = sys.g.at(0.0);
  const Vector w = spmv(sys.d, ldl_solve(sys.a, fdot0));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += w[i] - g0[i];
  return norm2(r);
}

void make_consistent(PoroSystem& sys) {
  Vector rhs = sys.f.at(0.0);
  axpy(1.0, spmv_transpose(sys.d, sys.p0), rhs);
  sys.u0 = ldl_solve(sys.a, rhs);
}

PoroSystem shift_system(const PoroSystem& sys, std::span<const double> u_ref,
                        std::span<const double> p_ref) {
  if (u_ref.size() != sys.n_u() || p_ref.size() != sys.n_p()) {
    throw DimensionError("shift_system: reference state has the wrong size");
  }
  PoroSystem out = sys;
  Vector f_shift = spmv(sys.a, u_ref);
  axpy(-1.0, spmv_transpose(sys.d, p_ref), f_shift);
  for (auto& v : f_shift) v = -v;
  out.f.add(std::move(f_shift), TimeFunction::constant(1.0));
  Vector g_shift = spmv(sys.b, p_ref);
  for (auto& v : g_shift) v = -v;
  out.g.add(std::move(g_shift), TimeFunction::constant(1.0));
  out.u0 = sys.u0;
  out.p0 = sys.p0;
  axpy(-1.0, u_ref, out.u0);
  axpy(-1.0, p_ref, out.p0);
  return out;
}

}  // namespace poro::model
