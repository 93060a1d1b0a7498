#include "poro/fem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "poro/error.hpp"

namespace poro::fem {

namespace {

using EdgeKey = std::pair<std::size_t, std::size_t>;

EdgeKey key(std::size_t a, std::size_t b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

double dist(const Point& p, const Point& q) { return std::hypot(p.x - q.x, p.y - q.y); }

}  // namespace

double TriMesh::triangle_area(std::size_t t) const {
  const auto& tri = triangles[t];
  const Point& a = vertices[tri[0]];
  const Point& b = vertices[tri[1]];
  const Point& c = vertices[tri[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double TriMesh::area() const {
  double s = 0.0;
  for (std::size_t t = 0; t < triangles.size(); ++t) s += triangle_area(t);
  return s;
}

double TriMesh::max_edge_length() const {
  double h = 0.0;
  for (const auto& tri : triangles) {
    for (int e = 0; e < 3; ++e) {
      h = std::max(h, dist(vertices[tri[e]], vertices[tri[(e + 1) % 3]]));
    }
  }
  return h;
}

void TriMesh::validate() const {
  const std::size_t nv = vertices.size();
  if (triangles.empty()) throw MeshError("mesh has no triangles");
  std::map<EdgeKey, int> uses;
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto& tri = triangles[t];
    for (auto v : tri) {
      if (v >= nv) throw MeshError("triangle " + std::to_string(t) + " references a missing vertex");
    }
    if (!(triangle_area(t) > 0.0)) {
      throw MeshError("triangle " + std::to_string(t) + " is degenerate or clockwise");
    }
    for (int e = 0; e < 3; ++e) ++uses[key(tri[e], tri[(e + 1) % 3])];
  }
  std::map<EdgeKey, int> marked;
  std::map<std::size_t, int> degree;
  for (const auto& be : boundary_edges) {
    const auto k = key(be.a, be.b);
    auto it = uses.find(k);
    if (it == uses.end() || it->second != 1) {
      throw MeshError("marked edge (" + std::to_string(be.a) + "," + std::to_string(be.b) +
                      ") is not a boundary edge");
    }
    if (++marked[k] > 1) throw MeshError("boundary edge marked twice");
    ++degree[be.a];
    ++degree[be.b];
  }
  for (const auto& [k, count] : uses) {
    if (count > 2) throw MeshError("edge shared by more than two triangles");
    if (count == 1 && !marked.count(k)) {
      throw MeshError("boundary edge (" + std::to_string(k.first) + "," +
                      std::to_string(k.second) + ") has no marker");
    }
  }
  for (const auto& [v, d] : degree) {
    if (d != 2) throw MeshError("boundary edges do not form closed loops");
  }
}

TriMesh make_unit_square_mesh(std::size_t n) {
  if (n < 1) throw MeshError("unit square mesh needs n >= 1");
  TriMesh m;
  const double h = 1.0 / static_cast<double>(n);
  auto id = [n](std::size_t i, std::size_t j) { return j * (n + 1) + i; };
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t i = 0; i <= n; ++i) {
      m.vertices.push_back({static_cast<double>(i) * h, static_cast<double>(j) * h});
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    m.boundary_edges.push_back({id(i, 0), id(i + 1, 0), 1});
    m.boundary_edges.push_back({id(n, i), id(n, i + 1), 2});
    m.boundary_edges.push_back({id(i + 1, n), id(i, n), 3});
    m.boundary_edges.push_back({id(0, i + 1), id(0, i), 4});
  }
  return m;
}

TriMesh make_annulus_mesh(double r_in, double r_out, std::size_t n) {
  if (!(r_in > 0.0 && r_in < r_out)) throw MeshError("annulus needs 0 < r_in < r_out");
  if (n < 1) throw MeshError("annulus mesh needs n >= 1");
  const std::size_t segments = 8 * n;
  const double pi = std::numbers::pi;
  const double spacing = 2.0 * pi * 0.5 * (r_in + r_out) / static_cast<double>(segments);
  const auto layers =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::lround((r_out - r_in) / spacing)));

  TriMesh m;
  for (std::size_t k = 0; k <= layers; ++k) {
    const double r = r_in + (r_out - r_in) * static_cast<double>(k) / static_cast<double>(layers);
    for (std::size_t j = 0; j < segments; ++j) {
      const double th = 2.0 * pi * static_cast<double>(j) / static_cast<double>(segments);
      m.vertices.push_back({r * std::cos(th), r * std::sin(th)});
    }
  }
  auto id = [segments](std::size_t k, std::size_t j) { return k * segments + j % segments; };
  for (std::size_t k = 0; k < layers; ++k) {
    for (std::size_t j = 0; j < segments; ++j) {
      m.triangles.push_back({id(k, j), id(k + 1, j), id(k + 1, j + 1)});
      m.triangles.push_back({id(k, j), id(k + 1, j + 1), id(k, j + 1)});
    }
  }
  for (std::size_t j = 0; j < segments; ++j) {
    m.boundary_edges.push_back({id(layers, j), id(layers, j + 1), 1});
    m.boundary_edges.push_back({id(0, j + 1), id(0, j), 2});
  }
  return m;
}

bool is_delaunay(const TriMesh& mesh, double tol) {
  std::map<EdgeKey, std::vector<std::size_t>> opposite;
  for (const auto& tri : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      opposite[key(tri[e], tri[(e + 1) % 3])].push_back(tri[(e + 2) % 3]);
    }
  }
  auto angle = [&](std::size_t apex, const EdgeKey& k) {
    const Point& o = mesh.vertices[apex];
    const Point& a = mesh.vertices[k.first];
    const Point& b = mesh.vertices[k.second];
    const double ux = a.x - o.x, uy = a.y - o.y, vx = b.x - o.x, vy = b.y - o.y;
    return std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
  };
  for (const auto& [k, apexes] : opposite) {
    if (apexes.size() != 2) continue;
    if (angle(apexes[0], k) + angle(apexes[1], k) > std::numbers::pi * (1.0 + tol)) return false;
  }
  return true;
}

}  // namespace poro::fem
