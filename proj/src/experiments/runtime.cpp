#include "poro/experiments/runtime.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "poro/error.hpp"
#include "poro/model/coupling.hpp"
#include "poro/steppers/simulation.hpp"

namespace poro::experiments {

namespace {

struct Job {
  std::size_t row;
  steppers::StepperConfig cfg;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

RuntimeStudy run_runtime(const RuntimeConfig& config) {
  if (config.taus.empty()) throw ConfigError("runtime: empty tau list");
  if (config.repeats == 0) throw ConfigError("runtime: repeats must be positive");
  RuntimeStudy study;
  study.problem = make_tissue_problem(config.tissue);
  const model::PoroSystem& sys = study.problem.dynamics;
  study.k = model::iteration_bound(study.problem.omega_formula);

  steppers::StepperConfig base;
  base.t_end = config.tissue.t_end;
  base.record_every = std::numeric_limits<std::size_t>::max();
  base.record_inner_residuals = false;

  steppers::StepperConfig ref_cfg = base;
  ref_cfg.scheme = steppers::Scheme::ImplicitEuler;
  ref_cfg.tau = config.tau_ref;
  const auto ref = steppers::run_simulation(sys, ref_cfg);
  if (ref.diverged_at) throw ConvergenceError("runtime: reference run diverged");

  std::vector<double> taus = config.taus;
  std::sort(taus.begin(), taus.end(), std::greater<>());
  std::vector<Job> jobs;
  for (double tau : taus) {
    steppers::StepperConfig damped = base;
    damped.scheme = steppers::Scheme::NovelDamped;
    damped.tau = tau;
    damped.inner_iterations = study.k;
    damped.gamma = model::relaxation_factor(study.problem.omega_formula);
    damped.inexact_cap = config.inexact_cap;
    apply_solver_method(damped, linalg::SolverMethod::Iterative);
    damped.mechanics.tol = damped.flow.tol = config.krylov_tol;
    study.rows.push_back({"damped", study.k, tau});
    jobs.push_back({study.rows.size() - 1, damped});

    steppers::StepperConfig ie = base;
    ie.scheme = steppers::Scheme::ImplicitEuler;
    ie.tau = tau;
    ie.block_solver = steppers::BlockSolver::MinRes;
    ie.block_tol = config.krylov_tol;
    study.rows.push_back({"implicit-euler", 0, tau});
    jobs.push_back({study.rows.size() - 1, ie});
  }

  std::vector<Job> order;
  for (std::size_t r = 0; r < config.repeats; ++r) order.insert(order.end(), jobs.begin(), jobs.end());
  std::mt19937_64 rng(config.seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::vector<double>> times(study.rows.size());
  for (const Job& job : order) {
    const auto start = std::chrono::steady_clock::now();
    const auto run = steppers::run_simulation(sys, job.cfg);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    RuntimeRow& row = study.rows[job.row];
    times[job.row].push_back(elapsed);
    row.krylov_iterations = run.krylov_iterations;
    if (run.diverged_at) {
      row.diverged = true;
      row.error = job.cfg.guard;
    } else {
      row.error = tissue_error(sys, run.final_u(), run.final_p(), ref.final_u(), ref.final_p());
    }
  }
  std::vector<RuntimeRow> damped_rows, ie_rows;
  for (std::size_t i = 0; i < study.rows.size(); ++i) {
    study.rows[i].wall_time = median(times[i]);
    (study.rows[i].scheme == "damped" ? damped_rows : ie_rows).push_back(study.rows[i]);
  }
  study.damped_time_at_target = time_at_error(damped_rows, config.target_error);
  study.implicit_euler_time_at_target = time_at_error(ie_rows, config.target_error);
  return study;
}

std::optional<double> time_at_error(const std::vector<RuntimeRow>& rows, double target) {
  std::vector<RuntimeRow> sorted = rows;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.tau > b.tau; });
  auto ok = [target](const RuntimeRow& r) { return !r.diverged && r.error <= target; };
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!ok(sorted[i])) continue;
    if (i == 0 || sorted[i - 1].diverged || !(sorted[i].error > 0.0)) return sorted[i].wall_time;
    const RuntimeRow& a = sorted[i - 1];
    const RuntimeRow& b = sorted[i];
    const double s = std::log(target / a.error) / std::log(b.error / a.error);
    return std::exp(std::log(a.wall_time) + s * (std::log(b.wall_time) - std::log(a.wall_time)));
  }
  return std::nullopt;
}

CsvTable runtime_table(const std::vector<RuntimeRow>& rows) {
  CsvTable t({"scheme", "K", "tau", "error", "diverged", "wall_time", "krylov_iterations"});
  for (const auto& r : rows) {
    t.add_row({r.scheme, static_cast<std::int64_t>(r.k), r.tau, r.error, std::int64_t{r.diverged},
               r.wall_time, static_cast<std::int64_t>(r.krylov_iterations)});
  }
  return t;
}

CsvTable runtime_summary_table(const RuntimeStudy& study, double target_error) {
  CsvTable t({"scheme", "target_error", "time_at_target", "reached"});
  const std::pair<const char*, const std::optional<double>*> entries[] = {
      {"damped", &study.damped_time_at_target},
      {"implicit-euler", &study.implicit_euler_time_at_target},
  };
  for (const auto& [name, value] : entries) {
    t.add_row({std::string(name), target_error, value->value_or(0.0),
               std::int64_t{value->has_value()}});
  }
  return t;
}

}  // namespace poro::experiments
