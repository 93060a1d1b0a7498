#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "poro/error.hpp"
#include "poro/experiments/convergence.hpp"
#include "poro/experiments/csv.hpp"
#include "poro/experiments/grid.hpp"
#include "poro/experiments/runtime.hpp"
#include "poro/experiments/sharpness.hpp"
#include "poro/experiments/tables.hpp"
#include "poro/experiments/tissue.hpp"
#include "poro/model/coupling.hpp"
#include "poro/model/model_problem.hpp"

using namespace poro;
using namespace poro::experiments;

TEST_CASE("csv formatting") {
  CsvTable t({"name", "x", "n"});
  t.add_row({std::string("a"), 0.5, std::int64_t{3}});
  t.add_row({std::string("b"), -1.25e-7, std::int64_t{-2}});
  CHECK(t.str() == "name,x,n\na,5.00000000e-01,3\nb,-1.25000000e-07,-2\n");
  CHECK(t.number(1, "x") == -1.25e-7);
  CHECK(t.number(0, "n") == 3.0);
  CHECK_THROWS_AS(t.add_row({1.0}), DimensionError);
  CHECK_THROWS_AS(t.add_row({std::string("a,b"), 1.0, std::int64_t{0}}), IoError);
  CHECK_THROWS_AS(t.add_row({std::string("q\""), 1.0, std::int64_t{0}}), IoError);
  CHECK_THROWS_AS(t.add_row({std::string("c"), std::nan(""), std::int64_t{0}}), IoError);
  CHECK_THROWS_AS(t.add_row({std::string("c"), INFINITY, std::int64_t{0}}), IoError);
  CHECK_THROWS(t.column_index("missing"));

  const auto dir = std::filesystem::temp_directory_path() / "poro_csv_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  t.write(dir / "t.csv");
  std::ifstream in(dir / "t.csv");
  std::string first;
  std::getline(in, first);
  CHECK(first == "name,x,n");
  std::filesystem::remove_all(dir.parent_path());
}

TEST_CASE("grid parsing") {
  const auto r = parse_range("0.8:0.22857:11");
  CHECK(r.size() == 45);
  CHECK(r.front() == 0.8);
  CHECK(r[1] == doctest::Approx(1.02857));
  CHECK(parse_range("2").size() == 1);
  CHECK(parse_range("0:0.1:1").size() == 11);
  CHECK(parse_number("1/300") == doctest::Approx(1.0 / 300.0));
  CHECK(parse_number("2.5e-1") == 0.25);
  CHECK(parse_number_list("60,30, 7.5") == std::vector<double>{60.0, 30.0, 7.5});
  CHECK(parse_index_list("1-3,7") == std::vector<std::size_t>{1, 2, 3, 7});
  CHECK_THROWS_AS(parse_range("1:0:2"), ConfigError);
  CHECK_THROWS_AS(parse_range("3:1:2"), ConfigError);
  CHECK_THROWS_AS(parse_number("abc"), ConfigError);
  CHECK_THROWS_AS(parse_number("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_index_list("0"), ConfigError);
  CHECK_THROWS_AS(parse_index_list("4-2"), ConfigError);
}

TEST_CASE("material and threshold tables") {
  const CsvTable m = material_table();
  REQUIRE(m.rows().size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const double lam = m.number(i, "lambda"), mu = m.number(i, "mu"), al = m.number(i, "alpha");
    CHECK(m.number(i, "omega") ==
          doctest::Approx(al * al * m.number(i, "biot_modulus") / (lam + mu)).epsilon(1e-12));
  }
  const CsvTable t = threshold_table(10);
  REQUIRE(t.rows().size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    const double k = t.number(i, "K"), w = t.number(i, "omega_threshold");
    CHECK(t.number(i, "closed_form_k") == doctest::Approx(k).epsilon(1e-10));
    CHECK(t.number(i, "omega_threshold_2dp") == doctest::Approx(std::floor(w * 100.0 + 1e-9) / 100.0));
  }
  CHECK(t.number(1, "omega_threshold") == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("sharpness spot points") {
  const SharpnessPoint below = sharpness_point(1.0286, 1);
  CHECK(below.stable());
  CHECK(below.error == doctest::Approx(1.707083e-4).epsilon(1e-3));
  const SharpnessPoint above = sharpness_point(1.2571, 1);
  CHECK_FALSE(above.stable());
  const auto pts = run_sharpness({1.2571, 1.0286}, {1});
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].omega == 1.0286);
  CHECK(pts[0].error == below.error);
  const CsvTable tab = sharpness_table(pts, 1e12);
  CHECK(tab.number(0, "stable") == 1.0);
  CHECK(tab.number(1, "stable") == 0.0);
}

TEST_CASE("experimental threshold brackets the edge") {
  SharpnessOptions coarse;
  coarse.tau = 1.0 / 100.0;
  const ThresholdResult r = stability_threshold(2, 0.1, coarse);
  CHECK(r.proven == doctest::Approx(2.0));
  CHECK(r.experimental < r.unstable);
  CHECK(r.unstable - r.experimental <= 0.1 + 1e-12);
  CHECK(sharpness_point(r.experimental, 2, coarse).stable());
  CHECK_FALSE(sharpness_point(r.unstable, 2, coarse).stable());
}

TEST_CASE("convergence of the damped scheme on the model problem") {
  const auto sys = model::make_model_problem(1.0);
  steppers::StepperConfig cfg;
  cfg.scheme = steppers::Scheme::NovelDamped;
  cfg.inner_iterations = 3;
  cfg.t_end = 1.0;
  const ConvergenceStudy st = run_convergence(sys, cfg, {1.0 / 40, 1.0 / 20, 1.0 / 80}, 16.0);
  REQUIRE(st.rows.size() == 3);
  CHECK(st.rows[0].tau == 1.0 / 20);
  CHECK_FALSE(st.rows[0].eoc.has_value());
  CHECK(st.rows[2].eoc.value() == doctest::Approx(1.0).epsilon(0.15));
  CHECK(st.tau_ref == doctest::Approx(1.0 / 1280));
  const CsvTable t = convergence_table(st);
  CHECK(t.str().find(",,") != std::string::npos);
  CHECK_THROWS_AS(run_convergence(sys, cfg, {0.3}), ConfigError);
}

TEST_CASE("time at target error") {
  auto row = [](double err, double time) {
    RuntimeRow r;
    r.scheme = "damped";
    r.error = err;
    r.wall_time = time;
    return r;
  };
  const std::vector<RuntimeRow> rows{row(1e-1, 1.0), row(1e-2, 4.0), row(1e-3, 16.0)};
  CHECK(time_at_error(rows, 1e-2).value() == doctest::Approx(4.0));
  CHECK(time_at_error(rows, std::sqrt(1e-1 * 1e-2)).value() == doctest::Approx(2.0));
  CHECK(time_at_error(rows, 1.0).value() == doctest::Approx(1.0));
  CHECK_FALSE(time_at_error(rows, 1e-4).has_value());
}

TEST_CASE("tissue surrogate problem") {
  TissueConfig cfg;
  cfg.mesh_n = 2;
  const TissueProblem prob = make_tissue_problem(cfg);
  CHECK(prob.delaunay);
  CHECK(prob.omega_formula ==
        doctest::Approx(model::coupling_parameter(model::materials::brain_tissue())));
  CHECK(prob.omega_effective <= prob.omega_formula + 1e-6);
  CHECK(prob.p_min >= cfg.p_sas);
  CHECK(prob.p_max == doctest::Approx(cfg.p_ventricle));
  for (double v : prob.dynamics.u0) CHECK(v == 0.0);
  for (double v : prob.dynamics.p0) CHECK(v == 0.0);
  CHECK(tissue_summary_table(prob).rows().size() == 8);

  const auto& sys = prob.fem.system;
  linalg::Vector u = sys.u0, p = sys.p0;
  p[0] += 1.0;
  CHECK(tissue_error(sys, sys.u0, sys.p0, u, p) == doctest::Approx(1.0));
  CHECK(tissue_error(sys, u, p, u, p) == 0.0);
}

TEST_CASE("short tissue study") {
  TissueConfig cfg;
  cfg.mesh_n = 2;
  cfg.taus = {120.0, 60.0};
  cfg.tau_ref = 30.0;
  cfg.ks = {2};
  const TissueStudy st = run_tissue(cfg);
  REQUIRE(st.rows.size() == 4);
  for (const auto& r : st.rows) CHECK_FALSE(r.diverged);
  CHECK(last_two_ratio(st.rows, "damped", 2) < 1.0);
  CHECK(tissue_table(st.rows).rows().size() == 4);
}
