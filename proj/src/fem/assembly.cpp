#include "poro/fem/assembly.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "poro/error.hpp"
#include "poro/fem/quadrature.hpp"
#include "poro/linalg/kernels.hpp"

namespace poro::fem {

using linalg::SparseMatrix;
using linalg::Triplet;

namespace {

struct ElementData {
  std::array<double, 144> k{};
  std::array<double, 36> d{};
  std::array<double, 9> b{};
  std::array<double, 9> c{};
  std::array<double, 12> body{};
  std::array<double, 3> source{};
};

struct Geometry {
  std::array<Point, 3> v;
  double area;
  std::array<std::array<double, 2>, 3> grad_l;  // gradients of the barycentric coordinates
};

Geometry geometry(const TriMesh& mesh, std::size_t t) {
  Geometry g;
  for (int i = 0; i < 3; ++i) g.v[i] = mesh.vertices[mesh.triangles[t][i]];
  g.area = mesh.triangle_area(t);
  if (!(g.area > 0.0)) throw MeshError("degenerate triangle " + std::to_string(t));
  for (int i = 0; i < 3; ++i) {
    const Point& pj = g.v[(i + 1) % 3];
    const Point& pk = g.v[(i + 2) % 3];
    g.grad_l[i] = {(pj.y - pk.y) / (2.0 * g.area), (pk.x - pj.x) / (2.0 * g.area)};
  }
  return g;
}

}  // namespace

void p2_basis(const std::array<double, 3>& l, const std::array<std::array<double, 2>, 3>& gl,
              std::array<double, 6>& phi, std::array<std::array<double, 2>, 6>& grad) {
  for (int i = 0; i < 3; ++i) {
    phi[i] = l[i] * (2.0 * l[i] - 1.0);
    grad[i] = {(4.0 * l[i] - 1.0) * gl[i][0], (4.0 * l[i] - 1.0) * gl[i][1]};
  }
  for (int e = 0; e < 3; ++e) {
    const int i = e, j = (e + 1) % 3;
    phi[3 + e] = 4.0 * l[i] * l[j];
    grad[3 + e] = {4.0 * (l[i] * gl[j][0] + l[j] * gl[i][0]),
                   4.0 * (l[i] * gl[j][1] + l[j] * gl[i][1])};
  }
}

namespace {

ElementData element(const Geometry& g, const model::MaterialParams& prm, const FemLoads& loads) {
  ElementData e;
  const double mu = prm.mu, lam = prm.lambda, alpha = prm.alpha;
  for (const auto& q : triangle_rule_degree4()) {
    const std::array<double, 3> l{q.l0, q.l1, q.l2};
    std::array<double, 6> phi;
    std::array<std::array<double, 2>, 6> dphi;
    p2_basis(l, g.grad_l, phi, dphi);
    const double w = q.weight * g.area;
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        const double dot = dphi[a][0] * dphi[b][0] + dphi[a][1] * dphi[b][1];
        for (int c = 0; c < 2; ++c) {
          for (int d = 0; d < 2; ++d) {
            double v = mu * dphi[a][d] * dphi[b][c] + lam * dphi[a][c] * dphi[b][d];
            if (c == d) v += mu * dot;
            e.k[(2 * a + c) * 12 + 2 * b + d] += w * v;
          }
        }
      }
    }
    for (int i = 0; i < 3; ++i) {
      for (int b = 0; b < 6; ++b) {
        for (int d = 0; d < 2; ++d) e.d[i * 12 + 2 * b + d] += w * alpha * l[i] * dphi[b][d];
      }
    }
    if (loads.body_force || loads.source) {
      const double x = l[0] * g.v[0].x + l[1] * g.v[1].x + l[2] * g.v[2].x;
      const double y = l[0] * g.v[0].y + l[1] * g.v[1].y + l[2] * g.v[2].y;
      if (loads.body_force) {
        const auto f = loads.body_force(x, y);
        for (int a = 0; a < 6; ++a) {
          e.body[2 * a] += w * f[0] * phi[a];
          e.body[2 * a + 1] += w * f[1] * phi[a];
        }
      }
      if (loads.source) {
        const double s = loads.source(x, y);
        for (int i = 0; i < 3; ++i) e.source[i] += w * s * l[i];
      }
    }
  }
  const double mob = prm.mobility();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      e.b[i * 3 + j] = mob * g.area * (g.grad_l[i][0] * g.grad_l[j][0] + g.grad_l[i][1] * g.grad_l[j][1]);
      e.c[i * 3 + j] = g.area / (12.0 * prm.biot_modulus) * (i == j ? 2.0 : 1.0);
    }
  }
  return e;
}

SparseMatrix reduce(const SparseMatrix& full, const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols, bool symmetric) {
  auto m = linalg::extract(full, rows, cols);
  return symmetric ? m.with_symmetric_flag(true) : m;
}

Vector restrict_to(std::span<const double> full, const std::vector<std::size_t>& free) {
  Vector out(free.size());
  for (std::size_t i = 0; i < free.size(); ++i) out[i] = full[free[i]];
  return out;
}

}  // namespace

FemSystem assemble(const TriMesh& mesh, const model::MaterialParams& params,
                   const BoundarySpec& bc, const FemLoads& loads, const AssemblyOptions& options) {
  params.validate();
  FemSystem out;
  out.dofs = build_dof_map(mesh, bc);
  const DofMap& dm = out.dofs;
  const std::size_t nt = mesh.n_triangles();
  const std::size_t nu = dm.n_u_full(), np = dm.n_p_full();

  std::vector<Geometry> geo(nt);
  for (std::size_t t = 0; t < nt; ++t) geo[t] = geometry(mesh, t);

  std::vector<ElementData> elems(nt);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(nt); ++t) {
    elems[static_cast<std::size_t>(t)] = element(geo[static_cast<std::size_t>(t)], params, loads);
  }

  // Serial scatter in element order keeps the result independent of threads.
  std::vector<Triplet> ta, tb, tc, td;
  ta.reserve(144 * nt);
  td.reserve(36 * nt);
  tb.reserve(9 * nt);
  tc.reserve(9 * nt);
  Vector f_body(nu, 0.0), g_source(np, 0.0), f_bnd(nu, 0.0), g_bnd(np, 0.0);
  for (std::size_t t = 0; t < nt; ++t) {
    const auto nodes = dm.element_nodes(mesh, t);
    const auto& tri = mesh.triangles[t];
    const auto& e = elems[t];
    for (int r = 0; r < 12; ++r) {
      const std::size_t gr = 2 * nodes[r / 2] + r % 2;
      for (int c = 0; c < 12; ++c) ta.push_back({gr, 2 * nodes[c / 2] + c % 2, e.k[r * 12 + c]});
      f_body[gr] += e.body[r];
    }
    for (int i = 0; i < 3; ++i) {
      for (int c = 0; c < 12; ++c) td.push_back({tri[i], 2 * nodes[c / 2] + c % 2, e.d[i * 12 + c]});
      for (int j = 0; j < 3; ++j) {
        tb.push_back({tri[i], tri[j], e.b[i * 3 + j]});
        tc.push_back({tri[i], tri[j], e.c[i * 3 + j]});
      }
      g_source[tri[i]] += e.source[i];
    }
  }

  // Boundary integrals: Robin mass and data, tractions.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> opposite;
  for (const auto& tri : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      std::size_t a = tri[k], b = tri[(k + 1) % 3];
      opposite[{std::min(a, b), std::max(a, b)}] = tri[(k + 2) % 3];
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_id;
  for (std::size_t k = 0; k < dm.edges.size(); ++k) edge_id[{dm.edges[k][0], dm.edges[k][1]}] = k;
  const auto line = gauss_legendre(3);
  for (const auto& be : mesh.boundary_edges) {
    const auto& cond = bc.at(be.marker);
    const Point& pa = mesh.vertices[be.a];
    const Point& pb = mesh.vertices[be.b];
    const double len = std::hypot(pb.x - pa.x, pb.y - pa.y);
    if (cond.pressure == PressureCondition::Robin) {
      const double c = cond.conductance;
      if (options.lump_robin) {
        tb.push_back({be.a, be.a, c * len / 2.0});
        tb.push_back({be.b, be.b, c * len / 2.0});
      } else {
        tb.push_back({be.a, be.a, c * len / 3.0});
        tb.push_back({be.b, be.b, c * len / 3.0});
        tb.push_back({be.a, be.b, c * len / 6.0});
        tb.push_back({be.b, be.a, c * len / 6.0});
      }
      g_bnd[be.a] += c * cond.exterior_pressure * len / 2.0;
      g_bnd[be.b] += c * cond.exterior_pressure * len / 2.0;
    }
    if (cond.displacement == DisplacementCondition::Traction && cond.traction) {
      const auto key = std::make_pair(std::min(be.a, be.b), std::max(be.a, be.b));
      const Point& po = mesh.vertices[opposite.at(key)];
      double nx = (pb.y - pa.y) / len, ny = -(pb.x - pa.x) / len;
      const double mx = 0.5 * (pa.x + pb.x), my = 0.5 * (pa.y + pb.y);
      if (nx * (po.x - mx) + ny * (po.y - my) > 0.0) nx = -nx, ny = -ny;
      const std::size_t mid = dm.n_vertices + edge_id.at(key);
      for (const auto& q : line) {
        const double s = q.s;
        const double x = pa.x + s * (pb.x - pa.x), y = pa.y + s * (pb.y - pa.y);
        const auto tr = cond.traction(x, y, nx, ny);
        const std::array<std::size_t, 3> nodes{be.a, be.b, mid};
        const std::array<double, 3> phi{(1.0 - s) * (1.0 - 2.0 * s), s * (2.0 * s - 1.0),
                                        4.0 * s * (1.0 - s)};
        for (int k = 0; k < 3; ++k) {
          f_bnd[2 * nodes[k]] += q.weight * len * tr[0] * phi[k];
          f_bnd[2 * nodes[k] + 1] += q.weight * len * tr[1] * phi[k];
        }
      }
    }
  }

  const auto a_full = SparseMatrix::from_triplets(nu, nu, ta);
  const auto b_full = SparseMatrix::from_triplets(np, np, tb);
  const auto c_full = SparseMatrix::from_triplets(np, np, tc);
  const auto d_full = SparseMatrix::from_triplets(np, nu, td);

  // Dirichlet data.
  out.u_dirichlet.assign(nu, 0.0);
  out.p_dirichlet.assign(np, 0.0);
  for (const auto& be : mesh.boundary_edges) {
    const auto& cond = bc.at(be.marker);
    if (cond.displacement == DisplacementCondition::Fixed && cond.displacement_value) {
      const auto key = std::make_pair(std::min(be.a, be.b), std::max(be.a, be.b));
      for (std::size_t node : {be.a, be.b, dm.n_vertices + edge_id.at(key)}) {
        const Point p = dm.node_point(mesh, node);
        const auto v = cond.displacement_value(p.x, p.y);
        out.u_dirichlet[2 * node] = v[0];
        out.u_dirichlet[2 * node + 1] = v[1];
      }
    }
    if (cond.pressure == PressureCondition::Dirichlet && cond.pressure_value) {
      for (std::size_t v : {be.a, be.b}) {
        out.p_dirichlet[v] = cond.pressure_value(mesh.vertices[v].x, mesh.vertices[v].y);
      }
    }
  }

  // Lifting: f -= A u_D - D^T p_D, g -= B p_D.
  const Vector a_ud = linalg::spmv(a_full, out.u_dirichlet);
  const Vector dt_pd = linalg::spmv_transpose(d_full, out.p_dirichlet);
  const Vector b_pd = linalg::spmv(b_full, out.p_dirichlet);
  for (std::size_t i = 0; i < nu; ++i) f_bnd[i] += dt_pd[i] - a_ud[i];
  for (std::size_t i = 0; i < np; ++i) g_bnd[i] -= b_pd[i];

  auto& sys = out.system;
  sys.a = reduce(a_full, dm.u_free, dm.u_free, true);
  sys.b = reduce(b_full, dm.p_free, dm.p_free, true);
  sys.c = reduce(c_full, dm.p_free, dm.p_free, true);
  sys.d = reduce(d_full, dm.p_free, dm.u_free, false);
  sys.f = model::Load(dm.n_u());
  sys.f.add(restrict_to(f_bnd, dm.u_free), model::TimeFunction::constant(1.0));
  if (loads.body_force) sys.f.add(restrict_to(f_body, dm.u_free), loads.body_profile);
  sys.g = model::Load(dm.n_p());
  sys.g.add(restrict_to(g_bnd, dm.p_free), model::TimeFunction::constant(1.0));
  if (loads.source) sys.g.add(restrict_to(g_source, dm.p_free), loads.source_profile);
  sys.u0.assign(dm.n_u(), 0.0);
  sys.p0.assign(dm.n_p(), 0.0);
  sys.params = params;
  return out;
}

}  // namespace poro::fem
