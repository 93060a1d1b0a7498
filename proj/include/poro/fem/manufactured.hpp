#pragma once

#include <array>
#include <functional>
#include <vector>

#include "poro/fem/assembly.hpp"

namespace poro::fem {

/// Smooth stationary solution with the loads it induces:
///   -div sigma(u) + alpha grad p = body_force,   -div((kappa/nu) grad p) = source.
struct ExactSolution {
  VectorField u;
  /// (du1/dx, du1/dy, du2/dx, du2/dy)
  std::function<std::array<double, 4>(double, double)> grad_u;
  ScalarField p;
  VectorField grad_p;
  VectorField body_force;
  ScalarField source;
};

/// u = (sin(pi x) sin(pi y), 0), p = sin(pi x) sin(pi y) on the unit square.
ExactSolution sine_solution(const model::MaterialParams& params);

struct H1Errors {
  double u = 0.0;  // |u - u_h|_{H1}
  double p = 0.0;  // |p - p_h|_{H1}
};

/// H1 seminorm errors of full nodal vectors against the exact solution.
H1Errors h1_errors(const TriMesh& mesh, const DofMap& dofs, std::span<const double> u_full,
                   std::span<const double> p_full, const ExactSolution& exact);

/// Solves the stationary problem with Dirichlet data from `exact` on every
/// marker and returns the errors.
H1Errors solve_manufactured(const TriMesh& mesh, const ExactSolution& exact,
                            const model::MaterialParams& params);

struct ManufacturedStudy {
  std::vector<double> h;
  std::vector<H1Errors> errors;
  /// Observed orders between consecutive meshes.
  std::vector<double> u_orders;
  std::vector<double> p_orders;
};

ManufacturedStudy manufactured_error(const std::vector<TriMesh>& meshes, const ExactSolution& exact,
                                     const model::MaterialParams& params);

}  // namespace poro::fem
