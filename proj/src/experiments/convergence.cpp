#include "poro/experiments/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "poro/error.hpp"
#include "poro/steppers/analysis.hpp"
#include "poro/steppers/simulation.hpp"

namespace poro::experiments {

namespace {

void check_divides(double tau, double t_end) {
  const double n = t_end / tau;
  if (std::abs(n - std::round(n)) > 1e-8 * std::max(1.0, n)) {
    throw ConfigError("convergence: tau must divide t_end");
  }
}

}  // namespace

ConvergenceStudy run_convergence(const model::PoroSystem& sys, const steppers::StepperConfig& config,
                                 std::vector<double> taus, double ref_factor) {
  if (taus.empty()) throw ConfigError("convergence: empty tau list");
  if (!(ref_factor >= 1.0)) throw ConfigError("convergence: reference factor must be >= 1");
  std::sort(taus.begin(), taus.end(), std::greater<>());

  ConvergenceStudy study;
  study.tau_ref = taus.back() / ref_factor;
  check_divides(study.tau_ref, config.t_end);

  steppers::StepperConfig ref_cfg = config;
  ref_cfg.scheme = steppers::Scheme::ImplicitEuler;
  ref_cfg.tau = study.tau_ref;
  ref_cfg.record_every = std::numeric_limits<std::size_t>::max();
  ref_cfg.record_inner_residuals = false;
  const auto ref = steppers::run_simulation(sys, ref_cfg);
  if (ref.diverged_at) throw ConvergenceError("convergence: reference run diverged");
  const double ref_norm =
      steppers::energy_error(sys, ref.final_u(), ref.final_p(), linalg::Vector(sys.n_u(), 0.0),
                             linalg::Vector(sys.n_p(), 0.0));

  for (double tau : taus) {
    check_divides(tau, config.t_end);
    steppers::StepperConfig cfg = config;
    cfg.tau = tau;
    cfg.record_every = std::numeric_limits<std::size_t>::max();
    cfg.record_inner_residuals = false;
    const auto run = steppers::run_simulation(sys, cfg);
    ConvergenceRow row;
    row.tau = tau;
    row.wall_time = run.total_wall_time;
    if (run.diverged_at) {
      row.diverged = true;
      row.error = row.relative_error = cfg.guard;
    } else {
      row.error = steppers::energy_error(sys, run.final_u(), run.final_p(), ref.final_u(),
                                         ref.final_p());
      row.relative_error = ref_norm > 0.0 ? row.error / ref_norm : row.error;
    }
    if (!study.rows.empty()) {
      const auto& prev = study.rows.back();
      if (!prev.diverged && !row.diverged && prev.error > 0.0 && row.error > 0.0) {
        row.eoc = std::log(prev.error / row.error) / std::log(prev.tau / row.tau);
      }
    }
    study.rows.push_back(row);
  }
  return study;
}

CsvTable convergence_table(const ConvergenceStudy& study) {
  CsvTable t({"tau", "error", "relative_error", "eoc", "diverged", "wall_time"});
  for (const auto& r : study.rows) {
    t.add_row({r.tau, r.error, r.relative_error,
               r.eoc ? CsvCell{*r.eoc} : CsvCell{std::string()}, std::int64_t{r.diverged},
               r.wall_time});
  }
  return t;
}

}  // namespace poro::experiments
