#include "poro/linalg/linear_solver.hpp"

#include <chrono>
#include <string>

#include "poro/error.hpp"
#include "poro/linalg/kernels.hpp"

namespace poro::linalg {

std::string_view to_string(SolverMethod method) {
  return method == SolverMethod::Direct ? "direct" : "iterative";
}

SolverMethod solver_method_from_string(std::string_view name) {
  if (name == "direct") return SolverMethod::Direct;
  if (name == "iterative") return SolverMethod::Iterative;
  throw ConfigError("unknown solver '" + std::string(name) + "'");
}

LinearSolver::LinearSolver(const SparseMatrix& a, const SolverSettings& settings)
    : a_(std::make_shared<const SparseMatrix>(a)), settings_(settings) {
  if (!a.is_square()) throw DimensionError("LinearSolver: matrix must be square");
  if (settings_.method == SolverMethod::Direct) {
    ldl_ = std::make_shared<const LdlFactorization>(a);
  } else {
    if (settings_.precond == PreconditionerKind::BlockSchurDiagonal) {
      throw ConfigError("LinearSolver: block preconditioner needs a block system");
    }
    precond_ = std::make_shared<const Preconditioner>(Preconditioner::make(settings_.precond, a));
  }
}

SolveResult LinearSolver::solve(std::span<const double> b, std::span<const double> x0,
                                std::optional<std::size_t> max_iter) const {
  if (ldl_) {
    const auto start = std::chrono::steady_clock::now();
    SolveResult out;
    out.x = ldl_->solve(b);
    const double b_norm = norm2(b);
    double rel = 0.0;
    if (b_norm > 0.0) {
      Vector r = spmv(*a_, out.x);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
      rel = norm2(r) / b_norm;
    }
    out.report.iterations = 1;
    out.report.final_residual = rel;
    out.report.converged = true;
    out.report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }
  return cg_solve(*a_, b, *precond_, settings_.tol, max_iter.value_or(settings_.max_iter), x0);
}

}  // namespace poro::linalg
