#pragma once

#include <array>

#include "poro/fem/boundary.hpp"
#include "poro/fem/dof_map.hpp"
#include "poro/fem/mesh.hpp"
#include "poro/model/poro_system.hpp"

namespace poro::fem {

/// Volumetric load f^(x) profile_f(t) and fluid source g^(x) profile_g(t).
/// Boundary data (traction, Robin, Dirichlet lifts) are constant in time.
struct FemLoads {
  VectorField body_force;
  model::TimeFunction body_profile = model::TimeFunction::constant(1.0);
  ScalarField source;
  model::TimeFunction source_profile = model::TimeFunction::constant(1.0);
};

struct AssemblyOptions {
  /// Lump the Robin boundary mass onto the edge vertices.
  bool lump_robin = false;
};

struct FemSystem {
  model::PoroSystem system;
  DofMap dofs;
  /// Full-length vectors holding the Dirichlet data at constrained dofs.
  Vector u_dirichlet;
  Vector p_dirichlet;

  Vector full_u(std::span<const double> reduced) const { return dofs.expand_u(reduced, u_dirichlet); }
  Vector full_p(std::span<const double> reduced) const { return dofs.expand_p(reduced, p_dirichlet); }
};

/// P2 shape functions (local order v0, v1, v2, e01, e12, e20) and their
/// gradients at barycentric point l, given the barycentric gradients gl.
void p2_basis(const std::array<double, 3>& l, const std::array<std::array<double, 2>, 3>& gl,
              std::array<double, 6>& phi, std::array<std::array<double, 2>, 6>& grad);

/// P2-P1 assembly of
///   A: int 2 mu eps(u):eps(v) + lambda div u div v
///   B: int (kappa/nu) grad p . grad q + conductance int_robin p q
///   C: int p q / M
///   D: int alpha div u q
/// with Dirichlet dofs removed and their data lifted into f and g. The
/// initial state of the returned system is zero.
FemSystem assemble(const TriMesh& mesh, const model::MaterialParams& params,
                   const BoundarySpec& bc, const FemLoads& loads = {},
                   const AssemblyOptions& options = {});

}  // namespace poro::fem
