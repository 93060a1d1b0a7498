#include "poro/experiments/tissue.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "poro/error.hpp"
#include "poro/fem/neutral_state.hpp"
#include "poro/linalg/kernels.hpp"
#include "poro/model/coupling.hpp"
#include "poro/model/material.hpp"
#include "poro/steppers/analysis.hpp"
#include "poro/steppers/simulation.hpp"

namespace poro::experiments {

using linalg::Vector;

void apply_solver_method(steppers::StepperConfig& cfg, linalg::SolverMethod method) {
  cfg.mechanics.method = method;
  cfg.mechanics.precond = linalg::PreconditionerKind::IncompleteCholesky0;
  cfg.flow.method = method;
  cfg.flow.precond = linalg::PreconditionerKind::Jacobi;
}

TissueProblem make_tissue_problem(const TissueConfig& config) {
  if (!(config.r_inner > 0.0 && config.r_outer > config.r_inner)) {
    throw ConfigError("tissue: radii must satisfy 0 < r_inner < r_outer");
  }
  TissueProblem tp;
  tp.mesh = fem::make_annulus_mesh(config.r_inner, config.r_outer, config.mesh_n);
  tp.delaunay = fem::is_delaunay(tp.mesh);

  fem::MarkerCondition skull;
  skull.displacement = fem::DisplacementCondition::Fixed;
  skull.pressure = fem::PressureCondition::Robin;
  skull.conductance = config.conductance;
  skull.exterior_pressure = config.p_sas;

  fem::MarkerCondition ventricle;
  const double pv = config.p_ventricle;
  ventricle.displacement = fem::DisplacementCondition::Traction;
  ventricle.traction = [pv](double, double, double nx, double ny) {
    return std::array<double, 2>{-pv * nx, -pv * ny};
  };
  ventricle.pressure = fem::PressureCondition::Dirichlet;
  ventricle.pressure_value = [pv](double, double) { return pv; };

  fem::BoundarySpec bc;
  bc.markers[1] = skull;
  bc.markers[2] = ventricle;

  fem::FemLoads loads;
  const double half = config.sector_half_angle;
  const double r0 = config.sector_r_min;
  const double r1 = config.sector_r_max;
  loads.source = [half, r0, r1](double x, double y) {
    const double r = std::hypot(x, y);
    return (r >= r0 && r <= r1 && std::abs(std::atan2(y, x)) < half) ? 1.0 : 0.0;
  };
  loads.source_profile = model::TimeFunction::ramp(config.source, config.source_ramp);

  const model::MaterialParams params = model::materials::brain_tissue();
  tp.fem = fem::assemble(tp.mesh, params, bc, loads, {config.lump_robin});
  fem::apply_neutral_state(tp.fem.system);
  tp.dynamics = model::shift_system(tp.fem.system, tp.fem.system.u0, tp.fem.system.p0);

  tp.omega_formula = model::coupling_parameter(params);
  tp.omega_effective = model::effective_coupling(tp.fem.system);
  const Vector p_full = tp.fem.full_p(tp.fem.system.p0);
  const auto [mn, mx] = std::minmax_element(p_full.begin(), p_full.end());
  tp.p_min = *mn;
  tp.p_max = *mx;
  return tp;
}

double tissue_error(const model::PoroSystem& sys, std::span<const double> u,
                    std::span<const double> p, std::span<const double> u_ref,
                    std::span<const double> p_ref) {
  const double scale = steppers::energy_error(sys, u_ref, p_ref, sys.u0, sys.p0);
  const double e = steppers::energy_error(sys, u, p, u_ref, p_ref);
  return scale > 0.0 ? e / scale : e;
}

namespace {

struct RunSpec {
  steppers::Scheme scheme;
  std::size_t k;
  double tau;
};

}  // namespace

TissueStudy run_tissue(const TissueConfig& config) {
  if (config.taus.empty() || config.ks.empty()) throw ConfigError("tissue: empty grid");
  TissueStudy study;
  study.problem = make_tissue_problem(config);
  const model::PoroSystem& sys = study.problem.dynamics;

  steppers::StepperConfig base;
  base.t_end = config.t_end;
  base.record_every = std::numeric_limits<std::size_t>::max();
  base.record_inner_residuals = false;
  base.schur_mode = config.fixed_stress_schur;
  base.schur_beta = config.fixed_stress_beta.value_or(study.problem.omega_formula);
  apply_solver_method(base, config.solver);

  steppers::StepperConfig ref_cfg = base;
  ref_cfg.scheme = steppers::Scheme::ImplicitEuler;
  ref_cfg.tau = config.tau_ref;
  const auto ref = steppers::run_simulation(sys, ref_cfg);
  if (ref.diverged_at) throw ConvergenceError("tissue: reference run diverged");

  std::vector<RunSpec> specs;
  for (auto scheme : {steppers::Scheme::NovelDamped, steppers::Scheme::FixedStress}) {
    for (std::size_t k : config.ks) {
      for (double tau : config.taus) specs.push_back({scheme, k, tau});
    }
  }
  const double gamma = model::relaxation_factor(study.problem.omega_formula);
  study.rows.resize(specs.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < specs.size(); ++i) {
    try {
      steppers::StepperConfig cfg = base;
      cfg.scheme = specs[i].scheme;
      cfg.inner_iterations = specs[i].k;
      cfg.tau = specs[i].tau;
      if (cfg.scheme == steppers::Scheme::NovelDamped) cfg.gamma = gamma;
      const auto run = steppers::run_simulation(sys, cfg);
      TissueRow row{std::string(steppers::to_string(cfg.scheme)), specs[i].k, specs[i].tau};
      row.wall_time = run.total_wall_time;
      if (run.diverged_at) {
        row.diverged = true;
        row.error = cfg.guard;
      } else {
        row.error = tissue_error(sys, run.final_u(), run.final_p(), ref.final_u(), ref.final_p());
      }
      study.rows[i] = row;
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::sort(study.rows.begin(), study.rows.end(), [](const auto& a, const auto& b) {
    if (a.scheme != b.scheme) return a.scheme < b.scheme;
    return a.k != b.k ? a.k < b.k : a.tau > b.tau;
  });
  return study;
}

double last_two_ratio(const std::vector<TissueRow>& rows, const std::string& scheme, std::size_t k) {
  std::vector<const TissueRow*> sel;
  for (const auto& r : rows) {
    if (r.scheme == scheme && r.k == k) sel.push_back(&r);
  }
  if (sel.size() < 2) throw ConfigError("tissue: fewer than two step sizes for " + scheme);
  std::sort(sel.begin(), sel.end(), [](auto a, auto b) { return a->tau > b->tau; });
  const TissueRow& coarse = *sel[sel.size() - 2];
  const TissueRow& fine = *sel.back();
  if (coarse.diverged || fine.diverged) return std::numeric_limits<double>::infinity();
  return fine.error / coarse.error;
}

CsvTable tissue_table(const std::vector<TissueRow>& rows) {
  CsvTable t({"scheme", "K", "tau", "error", "diverged", "wall_time"});
  for (const auto& r : rows) {
    t.add_row({r.scheme, static_cast<std::int64_t>(r.k), r.tau, r.error, std::int64_t{r.diverged},
               r.wall_time});
  }
  return t;
}

CsvTable tissue_summary_table(const TissueProblem& problem) {
  CsvTable t({"quantity", "value"});
  t.add_row({std::string("omega_formula"), problem.omega_formula});
  t.add_row({std::string("omega_stated"), kTissueOmegaStated});
  t.add_row({std::string("omega_effective"), problem.omega_effective});
  t.add_row({std::string("p_min"), problem.p_min});
  t.add_row({std::string("p_max"), problem.p_max});
  t.add_row({std::string("delaunay"), std::int64_t{problem.delaunay}});
  t.add_row({std::string("n_u"), static_cast<std::int64_t>(problem.fem.system.n_u())});
  t.add_row({std::string("n_p"), static_cast<std::int64_t>(problem.fem.system.n_p())});
  return t;
}

}  // namespace poro::experiments
