#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "poro/experiments/csv.hpp"
#include "poro/fem/assembly.hpp"
#include "poro/linalg/linear_solver.hpp"
#include "poro/steppers/step_context.hpp"

namespace poro::experiments {

/// Annulus surrogate of a brain slice: ventricle wall on the inner circle
/// (traction -p_ventricle n, pressure p_ventricle), skull on the outer
/// circle (fixed, Robin exchange with p_sas), and a fluid source ramped in
/// over an angular sector of the tissue.
struct TissueConfig {
  std::size_t mesh_n = 4;
  double r_inner = 0.02;
  double r_outer = 0.07;
  double p_ventricle = 1100.0;
  double p_sas = 1070.0;
  double conductance = 5e-10;
  double source = 1.5e-4;
  double source_ramp = 60.0;
  double sector_half_angle = 0.5235987755982988;
  double sector_r_min = 0.035;
  double sector_r_max = 0.055;
  std::vector<double> taus{60.0, 30.0, 15.0, 7.5, 3.75};
  double t_end = 600.0;
  double tau_ref = 1.5;
  std::vector<std::size_t> ks{1, 2, 3};
  /// L = beta C with beta = alpha^2 M / (mu + lambda) unless overridden.
  steppers::SchurMode fixed_stress_schur = steppers::SchurMode::ScaledCompressibility;
  std::optional<double> fixed_stress_beta;
  linalg::SolverMethod solver = linalg::SolverMethod::Direct;
  bool lump_robin = false;
};

struct TissueProblem {
  fem::TriMesh mesh;
  /// Neutral state installed as the initial data.
  fem::FemSystem fem;
  /// fem.system shifted about its neutral state (zero initial data); every
  /// run steps this one, so solver tolerances see only the dynamics.
  model::PoroSystem dynamics;
  bool delaunay = false;
  double omega_formula = 0.0;
  double omega_effective = 0.0;
  /// Range of the full neutral-state pressure field.
  double p_min = 0.0;
  double p_max = 0.0;
};

/// Assembles the surrogate and its shifted dynamics system.
TissueProblem make_tissue_problem(const TissueConfig& config);

/// Error relative to the reference's departure from the initial state:
///   E(x - x_ref) / E(x_ref - x_0),  E(u, p) = sqrt(|u|_A^2 + |p|_B^2).
double tissue_error(const model::PoroSystem& sys, std::span<const double> u,
                    std::span<const double> p, std::span<const double> u_ref,
                    std::span<const double> p_ref);

struct TissueRow {
  std::string scheme;
  std::size_t k = 0;
  double tau = 0.0;
  /// tissue_error at t_end; the guard value when the run diverged.
  double error = 0.0;
  bool diverged = false;
  double wall_time = 0.0;
};

struct TissueStudy {
  TissueProblem problem;
  std::vector<TissueRow> rows;
};

/// Damped scheme (gamma from the parameter-derived omega) and fixed-stress
/// for every K and tau, against implicit Euler at tau_ref. Rows sorted by
/// (scheme, K, decreasing tau).
TissueStudy run_tissue(const TissueConfig& config);

/// Ratio error(taus[n-1]) / error(taus[n-2]) for one scheme and K; infinity
/// when either run diverged.
double last_two_ratio(const std::vector<TissueRow>& rows, const std::string& scheme, std::size_t k);

/// scheme, K, tau, error, diverged, wall_time
CsvTable tissue_table(const std::vector<TissueRow>& rows);

/// quantity, value: omega_formula, omega_stated, omega_effective, p_min,
/// p_max, delaunay, n_u, n_p
CsvTable tissue_summary_table(const TissueProblem& problem);

/// The coupling quoted for the brain experiment alongside its parameter set.
inline constexpr double kTissueOmegaStated = 2.8;

/// Solver settings for `method`: IC(0) CG on mechanics, Jacobi CG on flow.
void apply_solver_method(steppers::StepperConfig& cfg, linalg::SolverMethod method);

}  // namespace poro::experiments
