#include "poro/fem/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "poro/error.hpp"
#include "poro/fem/neutral_state.hpp"
#include "poro/fem/quadrature.hpp"

namespace poro::fem {

ExactSolution sine_solution(const model::MaterialParams& prm) {
  const double pi = std::numbers::pi;
  const double mu = prm.mu, lam = prm.lambda, alpha = prm.alpha, mob = prm.mobility();
  ExactSolution ex;
  auto s = [pi](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
  auto sx = [pi](double x, double y) { return pi * std::cos(pi * x) * std::sin(pi * y); };
  auto sy = [pi](double x, double y) { return pi * std::sin(pi * x) * std::cos(pi * y); };
  auto sxy = [pi](double x, double y) { return pi * pi * std::cos(pi * x) * std::cos(pi * y); };
  ex.u = [s](double x, double y) { return std::array<double, 2>{s(x, y), 0.0}; };
  ex.grad_u = [sx, sy](double x, double y) {
    return std::array<double, 4>{sx(x, y), sy(x, y), 0.0, 0.0};
  };
  ex.p = s;
  ex.grad_p = [sx, sy](double x, double y) { return std::array<double, 2>{sx(x, y), sy(x, y)}; };
  ex.body_force = [=](double x, double y) {
    const double lap_part = -pi * pi * s(x, y);  // s_xx = s_yy
    return std::array<double, 2>{-(2.0 * mu + lam) * lap_part - mu * lap_part + alpha * sx(x, y),
                                 -(mu + lam) * sxy(x, y) + alpha * sy(x, y)};
  };
  ex.source = [=](double x, double y) { return mob * 2.0 * pi * pi * s(x, y); };
  return ex;
}

H1Errors h1_errors(const TriMesh& mesh, const DofMap& dofs, std::span<const double> u_full,
                   std::span<const double> p_full, const ExactSolution& exact) {
  const auto rule = triangle_rule_collapsed(6);
  double eu = 0.0, ep = 0.0;
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const double area = mesh.triangle_area(t);
    std::array<Point, 3> v;
    for (int i = 0; i < 3; ++i) v[i] = mesh.vertices[tri[i]];
    std::array<std::array<double, 2>, 3> gl;
    for (int i = 0; i < 3; ++i) {
      const Point& pj = v[(i + 1) % 3];
      const Point& pk = v[(i + 2) % 3];
      gl[i] = {(pj.y - pk.y) / (2.0 * area), (pk.x - pj.x) / (2.0 * area)};
    }
    const auto nodes = dofs.element_nodes(mesh, t);
    std::array<double, 2> grad_ph{0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
      grad_ph[0] += p_full[tri[i]] * gl[i][0];
      grad_ph[1] += p_full[tri[i]] * gl[i][1];
    }
    for (const auto& q : rule) {
      const std::array<double, 3> l{q.l0, q.l1, q.l2};
      const double x = l[0] * v[0].x + l[1] * v[1].x + l[2] * v[2].x;
      const double y = l[0] * v[0].y + l[1] * v[1].y + l[2] * v[2].y;
      std::array<double, 6> phi;
      std::array<std::array<double, 2>, 6> dphi;
      p2_basis(l, gl, phi, dphi);
      std::array<double, 4> gh{0.0, 0.0, 0.0, 0.0};
      for (int a = 0; a < 6; ++a) {
        for (int c = 0; c < 2; ++c) {
          const double coef = u_full[2 * nodes[a] + c];
          gh[2 * c] += coef * dphi[a][0];
          gh[2 * c + 1] += coef * dphi[a][1];
        }
      }
      const auto ge = exact.grad_u(x, y);
      const auto gp = exact.grad_p(x, y);
      const double w = q.weight * area;
      for (int k = 0; k < 4; ++k) eu += w * (ge[k] - gh[k]) * (ge[k] - gh[k]);
      ep += w * ((gp[0] - grad_ph[0]) * (gp[0] - grad_ph[0]) +
                 (gp[1] - grad_ph[1]) * (gp[1] - grad_ph[1]));
    }
  }
  return {std::sqrt(eu), std::sqrt(ep)};
}

H1Errors solve_manufactured(const TriMesh& mesh, const ExactSolution& exact,
                            const model::MaterialParams& params) {
  std::set<int> markers;
  for (const auto& be : mesh.boundary_edges) markers.insert(be.marker);
  BoundarySpec bc;
  for (int m : markers) {
    MarkerCondition c;
    c.displacement = DisplacementCondition::Fixed;
    c.displacement_value = exact.u;
    c.pressure = PressureCondition::Dirichlet;
    c.pressure_value = exact.p;
    bc.markers[m] = c;
  }
  FemLoads loads;
  loads.body_force = exact.body_force;
  loads.source = exact.source;
  const FemSystem fem = assemble(mesh, params, bc, loads);
  const auto [u, p] = neutral_state(fem.system);
  return h1_errors(mesh, fem.dofs, fem.full_u(u), fem.full_p(p), exact);
}

ManufacturedStudy manufactured_error(const std::vector<TriMesh>& meshes, const ExactSolution& exact,
                                     const model::MaterialParams& params) {
  if (meshes.empty()) throw ConfigError("manufactured_error: no meshes");
  ManufacturedStudy study;
  for (const auto& mesh : meshes) {
    study.h.push_back(mesh.max_edge_length());
    study.errors.push_back(solve_manufactured(mesh, exact, params));
  }
  for (std::size_t i = 1; i < meshes.size(); ++i) {
    const double lh = std::log(study.h[i - 1] / study.h[i]);
    study.u_orders.push_back(std::log(study.errors[i - 1].u / study.errors[i].u) / lh);
    study.p_orders.push_back(std::log(study.errors[i - 1].p / study.errors[i].p) / lh);
  }
  return study;
}

}  // namespace poro::fem
