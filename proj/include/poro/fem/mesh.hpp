#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace poro::fem {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct BoundaryEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  int marker = 0;
};

/// 2D triangulation. Triangles are counterclockwise vertex triples; every
/// boundary edge carries exactly one marker.
struct TriMesh {
  std::vector<Point> vertices;
  std::vector<std::array<std::size_t, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;

  std::size_t n_vertices() const { return vertices.size(); }
  std::size_t n_triangles() const { return triangles.size(); }

  /// Signed area (positive for counterclockwise).
  double triangle_area(std::size_t t) const;
  double area() const;
  /// Longest edge over all triangles.
  double max_edge_length() const;

  /// Throws MeshError on non-positive areas, indices out of range, unmarked
  /// or doubly marked boundary edges, marked interior edges, or boundary
  /// edges that do not form closed loops.
  void validate() const;
};

/// n x n squares on [0,1]^2, each split along its diagonal (2 n^2 triangles).
/// Markers: 1 bottom, 2 right, 3 top, 4 left.
TriMesh make_unit_square_mesh(std::size_t n);

/// Annulus r_in < r < r_out with 8n segments per circle and radial layers of
/// roughly the tangential spacing. Ring quads are cyclic trapezoids, so the
/// mesh is Delaunay. Markers: 1 outer circle, 2 inner circle.
TriMesh make_annulus_mesh(double r_in, double r_out, std::size_t n);

/// True when every interior edge has opposite angles summing to at most
/// pi (1 + tol).
bool is_delaunay(const TriMesh& mesh, double tol = 1e-12);

}  // namespace poro::fem
