#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "poro/fem/boundary.hpp"
#include "poro/fem/mesh.hpp"
#include "poro/linalg/sparse_matrix.hpp"

namespace poro::fem {

using linalg::Vector;

/// P2 vector displacement and P1 pressure numbering.
///
/// P2 nodes are the vertices (0 .. n_vertices-1) followed by the edges
/// (n_vertices .. n_vertices+n_edges-1); displacement component c of node j
/// is full dof 2j + c. Pressure dofs are the vertices. Constrained dofs are
/// removed; the reduced numbering keeps the full order.
struct DofMap {
  std::size_t n_vertices = 0;
  std::vector<std::array<std::size_t, 2>> edges;
  /// Edge ids of the local edges (v0,v1), (v1,v2), (v2,v0) per triangle.
  std::vector<std::array<std::size_t, 3>> triangle_edges;

  /// Full dof -> reduced dof, or kConstrained.
  std::vector<std::size_t> u_reduced;
  std::vector<std::size_t> p_reduced;
  std::vector<std::size_t> u_free;
  std::vector<std::size_t> u_constrained;
  std::vector<std::size_t> p_free;
  std::vector<std::size_t> p_constrained;

  static constexpr std::size_t kConstrained = static_cast<std::size_t>(-1);

  std::size_t n_nodes() const { return n_vertices + edges.size(); }
  std::size_t n_u_full() const { return 2 * n_nodes(); }
  std::size_t n_p_full() const { return n_vertices; }
  std::size_t n_u() const { return u_free.size(); }
  std::size_t n_p() const { return p_free.size(); }

  /// Local P2 nodes v0, v1, v2, e01, e12, e20 of triangle t.
  std::array<std::size_t, 6> element_nodes(const TriMesh& mesh, std::size_t t) const;
  Point node_point(const TriMesh& mesh, std::size_t node) const;

  /// Scatter reduced values into a full vector holding `constrained_values`
  /// at constrained dofs.
  Vector expand_u(std::span<const double> reduced, std::span<const double> full_dirichlet) const;
  Vector expand_p(std::span<const double> reduced, std::span<const double> full_dirichlet) const;
};

/// Numbers the edges and removes displacement dofs on Fixed markers and
/// pressure dofs on Dirichlet markers.
DofMap build_dof_map(const TriMesh& mesh, const BoundarySpec& bc);

}  // namespace poro::fem
