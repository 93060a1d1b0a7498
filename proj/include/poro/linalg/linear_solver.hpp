#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include "poro/linalg/direct.hpp"
#include "poro/linalg/krylov.hpp"
#include "poro/linalg/preconditioner.hpp"

namespace poro::linalg {

enum class SolverMethod { Direct, Iterative };

std::string_view to_string(SolverMethod method);
SolverMethod solver_method_from_string(std::string_view name);

struct SolverSettings {
  SolverMethod method = SolverMethod::Direct;
  PreconditionerKind precond = PreconditionerKind::IncompleteCholesky0;
  double tol = 1e-10;
  std::size_t max_iter = 5000;
};

/// Reusable solver for one SPD matrix: either a cached LDL^T factorization
/// or preconditioned CG with a cached preconditioner.
class LinearSolver {
 public:
  LinearSolver(const SparseMatrix& a, const SolverSettings& settings);

  /// Solves a x = b. `max_iter` overrides the iteration cap of the iterative
  /// path for this call (ignored by the direct path). A capped solve that
  /// stops early is not an error.
  SolveResult solve(std::span<const double> b, std::span<const double> x0 = {},
                    std::optional<std::size_t> max_iter = std::nullopt) const;

  const SparseMatrix& matrix() const { return *a_; }
  const SolverSettings& settings() const { return settings_; }

 private:
  std::shared_ptr<const SparseMatrix> a_;
  SolverSettings settings_;
  std::shared_ptr<const LdlFactorization> ldl_;
  std::shared_ptr<const Preconditioner> precond_;
};

}  // namespace poro::linalg
