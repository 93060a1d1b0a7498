#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "poro/error.hpp"
#include "poro/experiments/convergence.hpp"
#include "poro/experiments/grid.hpp"
#include "poro/experiments/runtime.hpp"
#include "poro/experiments/sharpness.hpp"
#include "poro/experiments/tables.hpp"
#include "poro/experiments/tissue.hpp"
#include "poro/model/coupling.hpp"
#include "poro/model/model_problem.hpp"

namespace fs = std::filesystem;
using namespace poro;
using namespace poro::experiments;

namespace {

struct Options {
  std::string omega_grid;
  std::string k;
  std::string tau;
  std::string t_end;
  std::size_t mesh_n = 0;
  std::string out = "results";
  std::string solver = "direct";
  std::uint64_t seed = 1;
};

void save(const CsvTable& table, const Options& o, const std::string& name) {
  const fs::path path = fs::path(o.out) / name;
  table.write(path);
  std::cout << "wrote " << path.string() << " (" << table.rows().size() << " rows)\n";
}

void run_tables(const Options& o) {
  const CsvTable materials = material_table();
  const CsvTable thresholds = threshold_table(10);
  save(materials, o, "tables_materials.csv");
  save(thresholds, o, "tables_thresholds.csv");
  std::cout << materials.str() << thresholds.str();
}

SharpnessOptions sharpness_options(const Options& o) {
  SharpnessOptions s;
  s.tau = parse_number(o.tau);
  s.t_end = parse_number(o.t_end);
  return s;
}

void run_sharpness_cmd(const Options& o) {
  const SharpnessOptions s = sharpness_options(o);
  const auto points = run_sharpness(parse_range(o.omega_grid), parse_index_list(o.k), s);
  save(sharpness_table(points, s.guard), o, "sharpness.csv");
}

void run_thresholds_cmd(const Options& o) {
  const auto results = run_thresholds(parse_index_list(o.k), 0.05, sharpness_options(o));
  const CsvTable t = threshold_results_table(results);
  save(t, o, "thresholds.csv");
  std::cout << t.str();
}

void run_convergence_cmd(const Options& o) {
  const auto omegas = parse_range(o.omega_grid);
  const auto ks = parse_index_list(o.k);
  if (omegas.size() != 1 || ks.size() != 1) {
    throw ConfigError("convergence takes one coupling value and one K");
  }
  const model::PoroSystem sys = model::make_model_problem(omegas[0]);
  steppers::StepperConfig cfg;
  cfg.scheme = steppers::Scheme::NovelDamped;
  cfg.inner_iterations = ks[0];
  cfg.gamma = model::relaxation_factor(omegas[0]);
  cfg.t_end = parse_number(o.t_end);
  apply_solver_method(cfg, linalg::solver_method_from_string(o.solver));
  const auto study = run_convergence(sys, cfg, parse_number_list(o.tau));
  const CsvTable t = convergence_table(study);
  save(t, o, "convergence.csv");
  std::cout << "reference tau " << format_real(study.tau_ref) << '\n' << t.str();
}

TissueConfig tissue_config(const Options& o) {
  TissueConfig c;
  c.mesh_n = o.mesh_n;
  c.taus = parse_number_list(o.tau);
  c.t_end = parse_number(o.t_end);
  c.ks = parse_index_list(o.k);
  c.solver = linalg::solver_method_from_string(o.solver);
  return c;
}

void run_tissue_cmd(const Options& o) {
  const TissueStudy study = run_tissue(tissue_config(o));
  const CsvTable summary = tissue_summary_table(study.problem);
  save(summary, o, "tissue_summary.csv");
  save(tissue_table(study.rows), o, "tissue.csv");
  std::cout << summary.str();
  if (std::abs(study.problem.omega_formula - kTissueOmegaStated) > 0.05) {
    std::cout << "note: coupling from the parameter set (" << format_real(study.problem.omega_formula)
              << ") differs from the stated value " << format_real(kTissueOmegaStated)
              << "; gamma and K use the former\n";
  }
}

void run_runtime_cmd(const Options& o) {
  RuntimeConfig c;
  c.tissue.mesh_n = o.mesh_n;
  c.tissue.t_end = parse_number(o.t_end);
  c.taus = parse_number_list(o.tau);
  c.seed = o.seed;
  const RuntimeStudy study = run_runtime(c);
  const CsvTable summary = runtime_summary_table(study, c.target_error);
  save(runtime_table(study.rows), o, "runtime.csv");
  save(summary, o, "runtime_summary.csv");
  std::cout << "damped K = " << study.k << '\n' << summary.str();
}

CLI::App* add_experiment(CLI::App& app, const std::string& name, const std::string& help,
                         Options& o) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("--out", o.out, "Output directory")->capture_default_str();
  sub->add_option("--seed", o.seed, "Seed for the order of timed runs")->capture_default_str();
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterative time stepping for linear poroelasticity: experiment harness"};
  app.require_subcommand(1);

  Options tables_o, sharp_o, thr_o, conv_o, tissue_o, rt_o;

  add_experiment(app, "tables", "Material couplings and iteration-bound thresholds", tables_o);

  sharp_o.omega_grid = "0.8:0.22857:11";
  sharp_o.k = "1-5";
  sharp_o.tau = "1/300";
  sharp_o.t_end = "1";
  auto* sharp = add_experiment(app, "sharpness", "Damped scheme error over (omega, K)", sharp_o);
  sharp->add_option("--omega-grid", sharp_o.omega_grid, "a:step:b")->capture_default_str();
  sharp->add_option("--k", sharp_o.k, "Inner iteration counts")->capture_default_str();
  sharp->add_option("--tau", sharp_o.tau, "Time step")->capture_default_str();
  sharp->add_option("--t-end", sharp_o.t_end, "Final time")->capture_default_str();

  thr_o.k = "1-5";
  thr_o.tau = "1/300";
  thr_o.t_end = "1";
  auto* thr = add_experiment(app, "thresholds", "Experimental stability thresholds per K", thr_o);
  thr->add_option("--k", thr_o.k, "Inner iteration counts")->capture_default_str();
  thr->add_option("--tau", thr_o.tau, "Time step")->capture_default_str();
  thr->add_option("--t-end", thr_o.t_end, "Final time")->capture_default_str();

  conv_o.omega_grid = "2";
  conv_o.k = "3";
  conv_o.tau = "1/75,1/150,1/300";
  conv_o.t_end = "1";
  auto* conv = add_experiment(app, "convergence", "Order of the damped scheme in time", conv_o);
  conv->add_option("--omega-grid", conv_o.omega_grid, "Coupling of the model problem")
      ->capture_default_str();
  conv->add_option("--k", conv_o.k, "Inner iterations")->capture_default_str();
  conv->add_option("--tau", conv_o.tau, "Comma-separated time steps")->capture_default_str();
  conv->add_option("--t-end", conv_o.t_end, "Final time")->capture_default_str();
  conv->add_option("--solver", conv_o.solver, "direct|iterative")->capture_default_str();

  tissue_o.k = "1,2,3";
  tissue_o.tau = "60,30,15,7.5,3.75";
  tissue_o.t_end = "600";
  tissue_o.mesh_n = 4;
  auto* tissue = add_experiment(app, "tissue", "Annulus brain-tissue surrogate", tissue_o);
  tissue->add_option("--k", tissue_o.k, "Inner iteration counts")->capture_default_str();
  tissue->add_option("--tau", tissue_o.tau, "Comma-separated time steps")->capture_default_str();
  tissue->add_option("--t-end", tissue_o.t_end, "Final time")->capture_default_str();
  tissue->add_option("--mesh-n", tissue_o.mesh_n, "Annulus resolution")->capture_default_str();
  tissue->add_option("--solver", tissue_o.solver, "direct|iterative")->capture_default_str();

  rt_o.tau = "7.5,3.75,1.875,0.9375,0.46875";
  rt_o.t_end = "600";
  rt_o.mesh_n = 4;
  auto* rt = add_experiment(app, "runtime", "Wall time at matched error", rt_o);
  rt->add_option("--tau", rt_o.tau, "Comma-separated time steps")->capture_default_str();
  rt->add_option("--t-end", rt_o.t_end, "Final time")->capture_default_str();
  rt->add_option("--mesh-n", rt_o.mesh_n, "Annulus resolution")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("tables")) run_tables(tables_o);
    if (app.got_subcommand("sharpness")) run_sharpness_cmd(sharp_o);
    if (app.got_subcommand("thresholds")) run_thresholds_cmd(thr_o);
    if (app.got_subcommand("convergence")) run_convergence_cmd(conv_o);
    if (app.got_subcommand("tissue")) run_tissue_cmd(tissue_o);
    if (app.got_subcommand("runtime")) run_runtime_cmd(rt_o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
