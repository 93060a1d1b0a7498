#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "poro/error.hpp"
#include "poro/linalg/kernels.hpp"
#include "poro/model/coupling.hpp"
#include "poro/model/model_problem.hpp"
#include "poro/steppers/analysis.hpp"
#include "poro/steppers/schemes.hpp"
#include "poro/steppers/simulation.hpp"
#include "poro/steppers/trace_csv.hpp"

using namespace poro;
using namespace poro::steppers;
using linalg::Vector;

namespace {

/// Dense implicit Euler step: [[A, -D^T], [D, C_tau]] (u, p) = (f, r).
std::pair<Vector, Vector> dense_ie_step(const model::PoroSystem& sys, double tau, double t_next,
                                        const Vector& u_n, const Vector& p_n) {
  const Eigen::MatrixXd a = oracle::dense(sys.a), d = oracle::dense(sys.d);
  const Eigen::MatrixXd c = oracle::dense(sys.c), b = oracle::dense(sys.b);
  const auto nu = a.rows(), np = c.rows();
  Eigen::MatrixXd m(nu + np, nu + np);
  m << a, -d.transpose(), d, c + tau * b;
  Eigen::VectorXd rhs(nu + np);
  rhs << oracle::vec(sys.f.at(t_next)),
      tau * oracle::vec(sys.g.at(t_next)) + d * oracle::vec(u_n) + c * oracle::vec(p_n);
  const Eigen::VectorXd x = m.partialPivLu().solve(rhs);
  return {oracle::std_vec(x.head(nu)), oracle::std_vec(x.tail(np))};
}

StepperConfig config(Scheme s, double tau, double t_end, std::size_t k = 1) {
  StepperConfig c;
  c.scheme = s;
  c.tau = tau;
  c.t_end = t_end;
  c.inner_iterations = k;
  return c;
}

double state_diff(const SimulationTrace& a, const SimulationTrace& b) {
  return std::max(oracle::max_abs_diff(a.final_u(), b.final_u()),
                  oracle::max_abs_diff(a.final_p(), b.final_p()));
}

}  // namespace

TEST_CASE("scheme names round trip") {
  for (auto s : {Scheme::ImplicitEuler, Scheme::Drained, Scheme::Undrained, Scheme::FixedStrain,
                 Scheme::FixedStress, Scheme::SemiExplicit, Scheme::NovelDamped}) {
    CHECK(scheme_from_string(to_string(s)) == s);
  }
  CHECK_THROWS_AS(scheme_from_string("explicit"), ConfigError);
  CHECK(schur_mode_from_string("diagonal") == SchurMode::Diagonal);
}

TEST_CASE("configuration validation") {
  StepperConfig c;
  c.tau = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = StepperConfig{};
  c.inner_iterations = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = StepperConfig{};
  c.gamma = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("implicit Euler step matches the dense block solve") {
  const model::PoroSystem sys = model::make_model_problem(1.7);
  const StepContext ctx(sys, config(Scheme::ImplicitEuler, 0.05, 1.0));
  const auto step = implicit_euler_step(ctx, 0.05, sys.u0, sys.p0);
  const auto [u, p] = dense_ie_step(sys, 0.05, 0.05, sys.u0, sys.p0);
  CHECK(oracle::max_abs_diff(step.u, u) < 1e-13);
  CHECK(oracle::max_abs_diff(step.p, p) < 1e-13);
  CHECK(step.inner_residuals.back() < 1e-13);
}

TEST_CASE("implicit Euler with MinRes matches the direct solve") {
  const model::PoroSystem sys = model::make_model_problem(3.0);
  StepperConfig c = config(Scheme::ImplicitEuler, 0.01, 0.2);
  const auto direct = run_simulation(sys, c);
  c.block_solver = BlockSolver::MinRes;
  c.block_tol = 1e-12;
  const auto iter = run_simulation(sys, c);
  CHECK(state_diff(direct, iter) < 1e-9);
  CHECK(iter.krylov_iterations > 0);
}

TEST_CASE("semi-explicit, drained K=1 and damped K=1 coincide exactly") {
  const model::PoroSystem sys = model::make_model_problem(0.8);
  const auto se = run_simulation(sys, config(Scheme::SemiExplicit, 0.01, 0.5));
  const auto dr = run_simulation(sys, config(Scheme::Drained, 0.01, 0.5, 1));
  StepperConfig nd = config(Scheme::NovelDamped, 0.01, 0.5, 1);
  nd.gamma = 0.7;
  const auto dm = run_simulation(sys, nd);
  CHECK(state_diff(se, dr) == 0.0);
  CHECK(state_diff(se, dm) == 0.0);
}

TEST_CASE("damped scheme with gamma = 1 is the drained split") {
  const model::PoroSystem sys = model::make_model_problem(0.6);
  for (std::size_t k : {2, 3, 5}) {
    StepperConfig nd = config(Scheme::NovelDamped, 0.02, 0.4, k);
    nd.gamma = 1.0;
    CHECK(state_diff(run_simulation(sys, nd), run_simulation(sys, config(Scheme::Drained, 0.02, 0.4, k))) ==
          0.0);
  }
}

TEST_CASE("the unrolled K = 2 step equals the loop") {
  const model::PoroSystem sys = model::make_model_problem(2.2);
  const StepContext ctx(sys, config(Scheme::NovelDamped, 0.1, 1.0, 2));
  const auto a = damped_step(ctx, 0.1, sys.u0, sys.p0, 2, 0.4);
  const auto b = damped_step_k2(ctx, 0.1, sys.u0, sys.p0, 0.4);
  CHECK(a.u == b.u);
  CHECK(a.p == b.p);
}

TEST_CASE("fixed-stress with the exact Schur complement is implicit Euler") {
  const model::PoroSystem sys = model::make_model_problem(4.0);
  StepperConfig fs = config(Scheme::FixedStress, 1.0 / 300.0, 1.0, 2);
  fs.schur_mode = SchurMode::ExactDense;
  const auto ie = run_simulation(sys, config(Scheme::ImplicitEuler, 1.0 / 300.0, 1.0));
  CHECK(state_diff(run_simulation(sys, fs), ie) < 1e-10);
}

TEST_CASE("splitting iterations converge to implicit Euler") {
  const model::PoroSystem sys = model::make_model_problem(0.9);
  const auto [u, p] = dense_ie_step(sys, 0.1, 0.1, sys.u0, sys.p0);
  for (Scheme s : {Scheme::Drained, Scheme::Undrained, Scheme::FixedStrain, Scheme::FixedStress}) {
    StepperConfig c = config(s, 0.1, 1.0, 1);
    c.inner_mode = InnerMode::ResidualTolerance;
    c.inner_tol = 1e-13;
    c.schur_mode = SchurMode::ScaledCompressibility;
    c.weight_mode = WeightMode::ExactDense;
    const StepContext ctx(sys, c);
    const auto step = split_iterative_step(ctx, 0.1, sys.u0, sys.p0);
    INFO(to_string(s));
    CHECK(step.inner_residuals.back() <= 1e-13);
    CHECK(oracle::max_abs_diff(step.u, u) < 1e-11);
    CHECK(oracle::max_abs_diff(step.p, p) < 1e-11);
  }
}

TEST_CASE("inner residuals of the damped scheme are recorded per sweep") {
  const model::PoroSystem sys = model::make_model_problem(1.5);
  const StepContext ctx(sys, config(Scheme::NovelDamped, 0.1, 1.0, 4));
  const auto step = damped_step(ctx, 0.1, sys.u0, sys.p0, 4, model::relaxation_factor(1.5));
  CHECK(step.inner_residuals.size() == 4);
}

TEST_CASE("the default relaxation uses the effective coupling") {
  const model::PoroSystem sys = model::make_model_problem(3.0);
  const StepContext k1(sys, config(Scheme::NovelDamped, 0.1, 1.0, 1));
  CHECK(k1.gamma() == 1.0);
  const StepContext k3(sys, config(Scheme::NovelDamped, 0.1, 1.0, 3));
  CHECK(k3.gamma() == doctest::Approx(2.0 / (2.0 + model::effective_coupling(sys))).epsilon(1e-12));
}

TEST_CASE("damped internals follow the affine recursion") {
  const model::PoroSystem sys = model::make_model_problem(2.5);
  const double gamma = model::relaxation_factor(2.5);
  for (std::size_t k = 1; k <= 10; ++k) {
    const RecursionCheck rc = inner_recursion_check(sys, 0.05, gamma, k, 0.05, sys.u0, sys.p0);
    CHECK(rc.max() < 1e-12);
  }
}

TEST_CASE("recursion matrices match their dense definitions") {
  const model::PoroSystem sys = model::make_model_problem(1.2);
  const double tau = 0.2, gamma = 0.6;
  const Eigen::MatrixXd a = oracle::dense(sys.a), d = oracle::dense(sys.d);
  const Eigen::MatrixXd ct = oracle::dense(sys.c) + tau * oracle::dense(sys.b);
  const Eigen::MatrixXd t = -ct.inverse() * d * a.inverse() * d.transpose();
  const DenseMatrix tm = recursion_matrix_t(sys, tau);
  const DenseMatrix sm = recursion_matrix_s(sys, tau, gamma);
  CHECK(tm(0, 0) == doctest::Approx(t(0, 0)).epsilon(1e-13));
  CHECK(sm(0, 0) == doctest::Approx(gamma * t(0, 0) + 1.0 - gamma).epsilon(1e-13));
  CHECK(inner_coupling(sys, tau) == doctest::Approx(std::abs(t(0, 0))).epsilon(1e-12));
}

TEST_CASE("splitting radius: power iteration agrees with the dense spectrum and the bound") {
  for (double w : {0.5, 1.0, 3.0, 8.0}) {
    const model::PoroSystem sys = model::make_model_problem(w);
    const double w_eff = model::effective_coupling(sys);
    const double gamma = model::relaxation_factor(w_eff);
    const DampedIterationOperator op(sys, 0.01, gamma);
    const DenseMatrix m = op.assemble();
    Eigen::MatrixXd md(static_cast<Eigen::Index>(m.n), static_cast<Eigen::Index>(m.n));
    for (std::size_t i = 0; i < m.n; ++i) {
      for (std::size_t j = 0; j < m.n; ++j) {
        md(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
      }
    }
    const double rho_dense = md.eigenvalues().cwiseAbs().maxCoeff();
    CHECK(damped_splitting_radius(sys, 0.01, gamma) == doctest::Approx(rho_dense).epsilon(1e-8));
    CHECK(rho_dense <= w_eff / (w_eff + 2.0) + 1e-8);
  }
}

TEST_CASE("operator apply matches the assembled matrix") {
  const model::PoroSystem sys = model::make_model_problem(1.3);
  const DampedIterationOperator op(sys, 0.1, 0.5);
  const DenseMatrix m = op.assemble();
  const Vector x = oracle::random_vector(op.dim(), 3);
  Vector y(op.dim());
  op.apply(x, y);
  for (std::size_t i = 0; i < m.n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) s += m(i, j) * x[j];
    CHECK(y[i] == doctest::Approx(s).epsilon(1e-13));
  }
}

TEST_CASE("simulation bookkeeping") {
  const model::PoroSystem sys = model::make_model_problem(1.0);
  const auto none = run_simulation(sys, config(Scheme::ImplicitEuler, 0.5, 0.2));
  CHECK(none.steps_taken == 0);
  CHECK(none.times.size() == 1);
  CHECK(none.final_p() == sys.p0);

  StepperConfig c = config(Scheme::ImplicitEuler, 0.1, 1.0);
  c.record_every = 3;
  const auto tr = run_simulation(sys, c);
  CHECK(tr.steps_taken == 10);
  CHECK(tr.times == std::vector<double>{0.0, 0.30000000000000004, 0.6000000000000001, 0.9, 1.0});
  CHECK(step_count(c) == 10);
  CHECK_FALSE(tr.diverged_at.has_value());
}

TEST_CASE("the blow-up guard stops unstable runs") {
  const model::PoroSystem sys = model::make_model_problem(6.0);
  StepperConfig c = config(Scheme::NovelDamped, 1.0 / 300.0, 1.0, 1);
  c.guard = 1e3;
  const auto tr = run_simulation(sys, c);
  REQUIRE(tr.diverged_at.has_value());
  CHECK(*tr.diverged_at == tr.steps_taken + 1);
  CHECK(tr.steps_taken < 300);
}

TEST_CASE("decoupled system: every scheme is implicit Euler") {
  model::PoroSystem sys = model::make_model_problem(1.0);
  sys.d = linalg::SparseMatrix::zero(1, 3);
  model::make_consistent(sys);
  const auto ie = run_simulation(sys, config(Scheme::ImplicitEuler, 0.01, 0.3));
  for (std::size_t k : {1, 2, 3}) {
    StepperConfig c = config(Scheme::NovelDamped, 0.01, 0.3, k);
    c.gamma = 0.5;
    CHECK(state_diff(run_simulation(sys, c), ie) < 1e-14);
  }
}

TEST_CASE("iterative inner solves reproduce the direct run") {
  const model::PoroSystem sys = model::make_model_problem(2.2);
  StepperConfig c = config(Scheme::NovelDamped, 0.01, 0.3, 3);
  const auto direct = run_simulation(sys, c);
  c.mechanics = {linalg::SolverMethod::Iterative, linalg::PreconditionerKind::IncompleteCholesky0, 1e-13};
  c.flow = {linalg::SolverMethod::Iterative, linalg::PreconditionerKind::Jacobi, 1e-13};
  CHECK(state_diff(run_simulation(sys, c), direct) < 1e-10);
}

TEST_CASE("energy error and stacked norms") {
  const model::PoroSystem sys = model::make_model_problem(1.0);
  const Vector u{1.0, 2.0, 3.0}, p{2.0}, z3(3, 0.0), z1(1, 0.0);
  const Eigen::VectorXd uv = oracle::vec(u);
  const double ua = uv.dot(oracle::dense(sys.a) * uv);
  CHECK(energy_error(sys, u, p, z3, z1) == doctest::Approx(std::sqrt(ua + 4.0)));
  CHECK(stacked_norm(u, p) == doctest::Approx(std::sqrt(18.0)));
  CHECK(stacked_error(u, p, u, p) == 0.0);
}

TEST_CASE("trace CSV layout") {
  const model::PoroSystem sys = model::make_model_problem(1.0);
  StepperConfig c = config(Scheme::NovelDamped, 0.25, 0.5, 2);
  const auto tr = run_simulation(sys, c);
  std::ostringstream os;
  write_trace_csv(os, sys, tr);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,u_norm_a,p_norm_c,p_norm_b,inner_residuals,wall_time");
  std::size_t rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 3);
  CHECK(os.str().find(';') != std::string::npos);
}

TEST_CASE("relaxing the final sweep destroys first-order convergence") {
  const model::PoroSystem sys = model::make_model_problem(2.0);
  auto errors = [&](bool relax_final) {
    std::vector<double> e;
    const auto ref = run_simulation(sys, config(Scheme::ImplicitEuler, 1.0 / 9600.0, 1.0));
    for (double tau : {1.0 / 75.0, 1.0 / 150.0, 1.0 / 300.0}) {
      StepperConfig c = config(Scheme::NovelDamped, tau, 1.0, 3);
      c.gamma = 0.5;
      c.relax_final = relax_final;
      const auto tr = run_simulation(sys, c);
      e.push_back(energy_error(sys, tr.final_u(), tr.final_p(), ref.final_u(), ref.final_p()));
    }
    return std::log(e[1] / e[2]) / std::log(2.0);
  };
  CHECK(errors(false) == doctest::Approx(1.0).epsilon(0.15));
  CHECK(errors(true) < 0.5);
}
