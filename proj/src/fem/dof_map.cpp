#include "poro/fem/dof_map.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "poro/error.hpp"

namespace poro::fem {

const MarkerCondition& BoundarySpec::at(int marker) const {
  auto it = markers.find(marker);
  if (it == markers.end()) {
    throw ConfigError("no boundary condition for marker " + std::to_string(marker));
  }
  return it->second;
}

BoundarySpec BoundarySpec::uniform(const std::initializer_list<int>& ids, const MarkerCondition& c) {
  BoundarySpec bc;
  for (int id : ids) bc.markers[id] = c;
  return bc;
}

std::array<std::size_t, 6> DofMap::element_nodes(const TriMesh& mesh, std::size_t t) const {
  const auto& v = mesh.triangles[t];
  const auto& e = triangle_edges[t];
  return {v[0], v[1], v[2], n_vertices + e[0], n_vertices + e[1], n_vertices + e[2]};
}

Point DofMap::node_point(const TriMesh& mesh, std::size_t node) const {
  if (node < n_vertices) return mesh.vertices[node];
  const auto& e = edges[node - n_vertices];
  const Point& a = mesh.vertices[e[0]];
  const Point& b = mesh.vertices[e[1]];
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

namespace {

Vector expand(std::span<const double> reduced, std::span<const double> full_dirichlet,
              const std::vector<std::size_t>& free, std::size_t n_full) {
  if (reduced.size() != free.size()) throw DimensionError("expand: reduced vector has the wrong length");
  Vector full(n_full, 0.0);
  if (!full_dirichlet.empty()) {
    if (full_dirichlet.size() != n_full) throw DimensionError("expand: Dirichlet vector has the wrong length");
    full.assign(full_dirichlet.begin(), full_dirichlet.end());
  }
  for (std::size_t i = 0; i < free.size(); ++i) full[free[i]] = reduced[i];
  return full;
}

}  // namespace

Vector DofMap::expand_u(std::span<const double> reduced,
                        std::span<const double> full_dirichlet) const {
  return expand(reduced, full_dirichlet, u_free, n_u_full());
}

Vector DofMap::expand_p(std::span<const double> reduced,
                        std::span<const double> full_dirichlet) const {
  return expand(reduced, full_dirichlet, p_free, n_p_full());
}

DofMap build_dof_map(const TriMesh& mesh, const BoundarySpec& bc) {
  mesh.validate();
  DofMap dm;
  dm.n_vertices = mesh.n_vertices();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_id;
  dm.triangle_edges.resize(mesh.n_triangles());
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int e = 0; e < 3; ++e) {
      std::size_t a = tri[e], b = tri[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      auto [it, inserted] = edge_id.try_emplace({a, b}, dm.edges.size());
      if (inserted) dm.edges.push_back({a, b});
      dm.triangle_edges[t][e] = it->second;
    }
  }

  std::vector<char> u_fixed(dm.n_u_full(), 0), p_fixed(dm.n_p_full(), 0);
  for (const auto& be : mesh.boundary_edges) {
    const auto& cond = bc.at(be.marker);
    if (cond.displacement == DisplacementCondition::Fixed) {
      const std::size_t mid =
          dm.n_vertices + edge_id.at({std::min(be.a, be.b), std::max(be.a, be.b)});
      for (std::size_t node : {be.a, be.b, mid}) {
        u_fixed[2 * node] = 1;
        u_fixed[2 * node + 1] = 1;
      }
    }
    if (cond.pressure == PressureCondition::Dirichlet) {
      p_fixed[be.a] = 1;
      p_fixed[be.b] = 1;
    }
  }

  dm.u_reduced.assign(dm.n_u_full(), DofMap::kConstrained);
  for (std::size_t i = 0; i < dm.n_u_full(); ++i) {
    if (u_fixed[i]) {
      dm.u_constrained.push_back(i);
    } else {
      dm.u_reduced[i] = dm.u_free.size();
      dm.u_free.push_back(i);
    }
  }
  dm.p_reduced.assign(dm.n_p_full(), DofMap::kConstrained);
  for (std::size_t i = 0; i < dm.n_p_full(); ++i) {
    if (p_fixed[i]) {
      dm.p_constrained.push_back(i);
    } else {
      dm.p_reduced[i] = dm.p_free.size();
      dm.p_free.push_back(i);
    }
  }
  return dm;
}

}  // namespace poro::fem
