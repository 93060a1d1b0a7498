#include "poro/experiments/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "poro/error.hpp"
#include "poro/model/coupling.hpp"
#include "poro/model/model_problem.hpp"
#include "poro/steppers/analysis.hpp"
#include "poro/steppers/simulation.hpp"

namespace poro::experiments {

SharpnessPoint sharpness_point(double omega, std::size_t k, const SharpnessOptions& options) {
  const model::PoroSystem sys = model::make_model_problem(omega);
  steppers::StepperConfig cfg;
  cfg.tau = options.tau;
  cfg.t_end = options.t_end;
  cfg.guard = options.guard;
  cfg.record_every = std::numeric_limits<std::size_t>::max();
  cfg.record_inner_residuals = false;

  cfg.scheme = steppers::Scheme::ImplicitEuler;
  const auto ref = steppers::run_simulation(sys, cfg);
  if (ref.diverged_at) throw ConvergenceError("sharpness: implicit Euler reference diverged");

  cfg.scheme = steppers::Scheme::NovelDamped;
  cfg.inner_iterations = k;
  cfg.gamma = model::relaxation_factor(omega);
  const auto run = steppers::run_simulation(sys, cfg);

  SharpnessPoint pt{omega, k};
  const double ref_norm = steppers::stacked_norm(ref.final_u(), ref.final_p());
  if (run.diverged_at) {
    pt.diverged = true;
    pt.error = options.guard;
    pt.relative_error = options.guard;
    return pt;
  }
  pt.error = steppers::stacked_error(run.final_u(), run.final_p(), ref.final_u(), ref.final_p());
  pt.relative_error = pt.error / ref_norm;
  return pt;
}

std::vector<SharpnessPoint> run_sharpness(const std::vector<double>& omegas,
                                          const std::vector<std::size_t>& ks,
                                          const SharpnessOptions& options) {
  if (omegas.empty() || ks.empty()) throw ConfigError("sharpness: empty grid");
  std::vector<SharpnessPoint> points(omegas.size() * ks.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      points[i] = sharpness_point(omegas[i % omegas.size()], ks[i / omegas.size()], options);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    return a.k != b.k ? a.k < b.k : a.omega < b.omega;
  });
  return points;
}

CsvTable sharpness_table(const std::vector<SharpnessPoint>& points, double guard) {
  CsvTable t({"omega", "K", "error", "relative_error", "diverged", "stable", "guard"});
  for (const auto& p : points) {
    t.add_row({p.omega, static_cast<std::int64_t>(p.k), p.error, p.relative_error,
               std::int64_t{p.diverged}, std::int64_t{p.stable()}, guard});
  }
  return t;
}

ThresholdResult stability_threshold(std::size_t k, double resolution,
                                    const SharpnessOptions& options) {
  if (!(resolution > 0.0)) throw ConfigError("thresholds: resolution must be positive");
  ThresholdResult r;
  r.k = k;
  r.proven = model::iteration_threshold(k);
  auto stable = [&](double w) {
    ++r.evaluations;
    return sharpness_point(w, k, options).stable();
  };
  double lo = r.proven;
  double hi = lo + 1.0;
  if (stable(lo)) {
    while (stable(hi)) {
      lo = hi;
      hi += 1.0;
      if (hi > 1e3) throw ConvergenceError("thresholds: no unstable coupling found");
    }
  } else {
    // omega = 0 decouples the system and is never evaluated.
    hi = lo;
    lo = 0.0;
  }
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (stable(mid) ? lo : hi) = mid;
  }
  r.experimental = lo;
  r.unstable = hi;
  return r;
}

std::vector<ThresholdResult> run_thresholds(const std::vector<std::size_t>& ks, double resolution,
                                            const SharpnessOptions& options) {
  if (ks.empty()) throw ConfigError("thresholds: empty K list");
  std::vector<ThresholdResult> out(ks.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < ks.size(); ++i) {
    try {
      out[i] = stability_threshold(ks[i], resolution, options);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
  return out;
}

CsvTable threshold_results_table(const std::vector<ThresholdResult>& results) {
  CsvTable t({"K", "proven_bound", "experimental_threshold", "first_unstable", "evaluations"});
  for (const auto& r : results) {
    t.add_row({static_cast<std::int64_t>(r.k), r.proven, r.experimental, r.unstable,
               static_cast<std::int64_t>(r.evaluations)});
  }
  return t;
}

}  // namespace poro::experiments
