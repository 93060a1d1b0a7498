#include "poro/model/coupling.hpp"

#include <cmath>

#include "poro/error.hpp"
#include "poro/linalg/direct.hpp"
#include "poro/linalg/kernels.hpp"
#include "poro/linalg/spectral.hpp"

namespace poro::model {

using namespace poro::linalg;

double coupling_parameter(const MaterialParams& params) {
  params.validate();
  return params.alpha * params.alpha * params.biot_modulus / (params.mu + params.lambda);
}

double effective_coupling(const PoroSystem& sys) {
  if (sys.d.nnz() == 0 || sys.d.max_abs() == 0.0) return 0.0;
  const LdlFactorization a_inv(sys.a);
  const LdlFactorization c_inv(sys.c);
  auto op = [&](std::span<const double> x, std::span<double> y) {
    const Vector w = spmv(sys.d, a_inv.solve(spmv_transpose(sys.d, x)));
    c_inv.solve(w, y);
  };
  SpectralOptions options;
  options.weight = &sys.c;
  return spectral_radius_selfadjoint(op, sys.n_p(), options);
}

double relaxation_factor(double omega) {
  if (!(omega >= 0.0)) throw ConfigError("relaxation_factor: omega must be non-negative");
  return 2.0 / (2.0 + omega);
}

namespace {

// Sign of K log(omega) - (K-1) log(2+omega), evaluated directly when finite.
bool bound_holds(double omega, std::size_t k) {
  const double kk = static_cast<double>(k);
  const double num = std::pow(omega, kk);
  const double den = std::pow(2.0 + omega, kk - 1.0);
  if (std::isfinite(num) && std::isfinite(den) && den > 0.0 && num > 0.0) return num < den;
  return kk * std::log(omega) < (kk - 1.0) * std::log(2.0 + omega);
}

}  // namespace

std::size_t iteration_bound(double omega) {
  if (!(omega > 0.0)) throw ConfigError("iteration_bound: omega must be positive");
  if (!std::isfinite(omega)) throw ConfigError("iteration_bound: omega must be finite");
  std::size_t k = 1;
  while (!bound_holds(omega, k)) ++k;
  return k;
}

double iteration_bound_closed_form(double omega) {
  if (!(omega > 0.0)) throw ConfigError("iteration_bound: omega must be positive");
  return 1.0 + std::log(omega) / (std::log(omega + 2.0) - std::log(omega));
}

double iteration_threshold(std::size_t k) {
  if (k == 0) throw ConfigError("iteration_threshold: K must be positive");
  if (k == 1) return 1.0;
  const double kk = static_cast<double>(k);
  auto h = [kk](double w) { return kk * std::log(w) - (kk - 1.0) * std::log(2.0 + w); };
  double lo = 1.0, hi = 2.0;
  while (h(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

CouplingReport coupling_report(const PoroSystem& sys) {
  CouplingReport r;
  if (sys.params) r.omega_formula = coupling_parameter(*sys.params);
  r.omega_effective = effective_coupling(sys);
  r.gamma = relaxation_factor(r.omega_effective);
  r.k_min = r.omega_effective > 0.0 ? iteration_bound(r.omega_effective) : 1;
  return r;
}

}  // namespace poro::model
