#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "oracles.hpp"
#include "poro/error.hpp"
#include "poro/fem/assembly.hpp"
#include "poro/fem/manufactured.hpp"
#include "poro/fem/mesh_io.hpp"
#include "poro/fem/neutral_state.hpp"
#include "poro/fem/quadrature.hpp"
#include "poro/linalg/kernels.hpp"
#include "poro/model/coupling.hpp"

using namespace poro;
using namespace poro::fem;
using linalg::Vector;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

MarkerCondition condition(DisplacementCondition d, PressureCondition p) {
  MarkerCondition c;
  c.displacement = d;
  c.pressure = p;
  return c;
}

const model::MaterialParams kParams{2.0, 1.5, 0.8, 3.0, 0.7, 1.0};

}  // namespace

TEST_CASE("unit square mesh") {
  const TriMesh m = make_unit_square_mesh(5);
  CHECK(m.n_vertices() == 36);
  CHECK(m.n_triangles() == 50);
  CHECK(m.boundary_edges.size() == 20);
  CHECK(m.area() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_NOTHROW(m.validate());
  CHECK(is_delaunay(m));
  CHECK(m.max_edge_length() == doctest::Approx(std::sqrt(2.0) / 5.0));
  for (int marker = 1; marker <= 4; ++marker) {
    CHECK(std::count_if(m.boundary_edges.begin(), m.boundary_edges.end(),
                        [marker](const BoundaryEdge& e) { return e.marker == marker; }) == 5);
  }
}

TEST_CASE("annulus mesh") {
  const TriMesh m = make_annulus_mesh(0.02, 0.07, 4);
  CHECK_NOTHROW(m.validate());
  CHECK(is_delaunay(m));
  const double exact = M_PI * (0.07 * 0.07 - 0.02 * 0.02);
  CHECK(m.area() < exact);
  CHECK(m.area() > 0.98 * exact);
  const TriMesh fine = make_annulus_mesh(0.02, 0.07, 8);
  CHECK(exact - fine.area() < 0.3 * (exact - m.area()));
  CHECK_THROWS_AS(make_annulus_mesh(0.07, 0.02, 4), MeshError);
}

TEST_CASE("Delaunay check detects a bad diagonal") {
  TriMesh m;
  m.vertices = {{0.0, 0.0}, {1.0, -0.1}, {2.0, 0.0}, {1.0, 0.1}};
  m.triangles = {{0, 1, 2}, {0, 2, 3}};
  m.boundary_edges = {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}};
  CHECK_NOTHROW(m.validate());
  CHECK_FALSE(is_delaunay(m));
  m.triangles = {{0, 1, 3}, {1, 2, 3}};
  CHECK(is_delaunay(m));
}

TEST_CASE("mesh validation") {
  TriMesh m = make_unit_square_mesh(2);
  std::swap(m.triangles[0][1], m.triangles[0][2]);
  CHECK_THROWS_AS(m.validate(), MeshError);
  m = make_unit_square_mesh(2);
  m.boundary_edges.pop_back();
  CHECK_THROWS_AS(m.validate(), MeshError);
  m = make_unit_square_mesh(2);
  m.triangles[0][0] = 99;
  CHECK_THROWS_AS(m.validate(), MeshError);
}

TEST_CASE("mesh text format round trip") {
  const TriMesh m = make_annulus_mesh(1.0, 2.0, 2);
  std::stringstream ss;
  write_mesh(ss, m);
  const TriMesh back = read_mesh(ss);
  CHECK(back.n_vertices() == m.n_vertices());
  CHECK(back.triangles == m.triangles);
  for (std::size_t i = 0; i < m.n_vertices(); ++i) {
    CHECK(back.vertices[i].x == m.vertices[i].x);
    CHECK(back.vertices[i].y == m.vertices[i].y);
  }
  std::stringstream bad("poro-mesh 1\nvertices 2\n0 0\n");
  CHECK_THROWS_AS(read_mesh(bad), Error);
}

TEST_CASE("triangle rules integrate monomials exactly") {
  auto check_rule = [](const std::vector<TriangleQuadPoint>& rule, int degree) {
    // Reference triangle (0,0), (1,0), (0,1) with x = l1, y = l2, area 1/2.
    for (int a = 0; a <= degree; ++a) {
      for (int b = 0; a + b <= degree; ++b) {
        double q = 0.0;
        for (const auto& pt : rule) q += 0.5 * pt.weight * std::pow(pt.l1, a) * std::pow(pt.l2, b);
        CHECK(q == doctest::Approx(factorial(a) * factorial(b) / factorial(a + b + 2)).epsilon(1e-13));
      }
    }
  };
  check_rule(triangle_rule_degree4(), 4);
  check_rule(triangle_rule_collapsed(4), 6);
  check_rule(triangle_rule_collapsed(6), 10);
}

TEST_CASE("Gauss-Legendre on [0, 1]") {
  for (int n = 1; n <= 5; ++n) {
    const auto rule = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double q = 0.0;
      for (const auto& pt : rule) q += pt.weight * std::pow(pt.s, k);
      CHECK(q == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
    }
  }
}

TEST_CASE("degree-of-freedom map") {
  const TriMesh m = make_unit_square_mesh(3);
  const auto all_free = BoundarySpec::uniform(
      {1, 2, 3, 4}, condition(DisplacementCondition::Traction, PressureCondition::NoFlux));
  const DofMap free = build_dof_map(m, all_free);
  CHECK(free.edges.size() == 33);  // V + T - 1 for a disk
  CHECK(free.n_u() == 2 * (16 + 33));
  CHECK(free.n_p() == 16);
  const auto clamped = BoundarySpec::uniform(
      {1, 2, 3, 4}, condition(DisplacementCondition::Fixed, PressureCondition::Dirichlet));
  const DofMap fixed = build_dof_map(m, clamped);
  CHECK(fixed.n_p() == 4);                 // interior vertices
  CHECK(fixed.n_u() == 2 * (4 + 9 + 12));  // interior vertices + interior edges
  const Vector red(fixed.n_p(), 2.0), dir(16, 5.0);
  const Vector full = fixed.expand_p(red, dir);
  CHECK(std::accumulate(full.begin(), full.end(), 0.0) == doctest::Approx(4 * 2.0 + 12 * 5.0));
  CHECK_THROWS_AS(build_dof_map(m, BoundarySpec::uniform({1, 2}, MarkerCondition{})), ConfigError);
}

TEST_CASE("assembled blocks reproduce exact integrals") {
  const TriMesh m = make_unit_square_mesh(4);
  const auto bc = BoundarySpec::uniform(
      {1, 2, 3, 4}, condition(DisplacementCondition::Traction, PressureCondition::NoFlux));
  const FemSystem fs = assemble(m, kParams, bc);
  const auto& sys = fs.system;
  CHECK(sys.a.check_symmetry(1e-13));
  CHECK(sys.b.check_symmetry(1e-13));
  CHECK(sys.c.check_symmetry(1e-13));

  const Vector ones_p(sys.n_p(), 1.0);
  CHECK(linalg::dot(ones_p, linalg::spmv(sys.c, ones_p)) ==
        doctest::Approx(1.0 / kParams.biot_modulus).epsilon(1e-12));
  CHECK(linalg::norm2(linalg::spmv(sys.b, ones_p)) < 1e-12);

  // Nodal interpolants of linear fields are exact in P2.
  Vector shear(sys.n_u()), stretch(sys.n_u()), rot(sys.n_u());
  for (std::size_t node = 0; node < fs.dofs.n_nodes(); ++node) {
    const Point x = fs.dofs.node_point(m, node);
    stretch[2 * node] = x.x;
    stretch[2 * node + 1] = 0.0;
    rot[2 * node] = -x.y;
    rot[2 * node + 1] = x.x;
    shear[2 * node] = x.y;
    shear[2 * node + 1] = 0.0;
  }
  // Rigid motions have no strain energy.
  CHECK(linalg::norm2(linalg::spmv(sys.a, rot)) < 1e-12);
  const double e_stretch = linalg::dot(stretch, linalg::spmv(sys.a, stretch));
  CHECK(e_stretch == doctest::Approx(2.0 * kParams.mu + kParams.lambda).epsilon(1e-12));
  const double e_shear = linalg::dot(shear, linalg::spmv(sys.a, shear));
  CHECK(e_shear == doctest::Approx(kParams.mu).epsilon(1e-12));
  // 1^T D u = alpha int div u.
  CHECK(linalg::dot(ones_p, linalg::spmv(sys.d, stretch)) == doctest::Approx(kParams.alpha).epsilon(1e-12));
  // Pressure gradient energy for p = x.
  Vector px(sys.n_p());
  for (std::size_t v = 0; v < m.n_vertices(); ++v) px[v] = m.vertices[v].x;
  CHECK(linalg::dot(px, linalg::spmv(sys.b, px)) == doctest::Approx(kParams.mobility()).epsilon(1e-12));
}

TEST_CASE("boundary loads integrate the data") {
  const TriMesh m = make_unit_square_mesh(3);
  BoundarySpec bc = BoundarySpec::uniform(
      {1, 2, 3, 4}, condition(DisplacementCondition::Traction, PressureCondition::NoFlux));
  bc.markers[2].traction = [](double, double y, double nx, double) {
    return std::array<double, 2>{nx * (1.0 + y), 0.5};
  };
  bc.markers[1].pressure = PressureCondition::Robin;
  bc.markers[1].conductance = 2.0;
  bc.markers[1].exterior_pressure = 3.0;
  const FemSystem fs = assemble(m, kParams, bc);
  const Vector f = fs.system.f.at(0.0);
  double fx = 0.0, fy = 0.0;
  for (std::size_t i = 0; i < f.size(); i += 2) {
    fx += f[i];
    fy += f[i + 1];
  }
  CHECK(fx == doctest::Approx(1.5).epsilon(1e-12));  // int_0^1 (1 + y) dy
  CHECK(fy == doctest::Approx(0.5).epsilon(1e-12));
  const Vector g = fs.system.g.at(0.0);
  CHECK(std::accumulate(g.begin(), g.end(), 0.0) == doctest::Approx(6.0).epsilon(1e-12));
  const Vector ones(fs.system.n_p(), 1.0);
  CHECK(linalg::dot(ones, linalg::spmv(fs.system.b, ones)) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("lumped Robin mass keeps the total exchange") {
  const TriMesh m = make_unit_square_mesh(3);
  BoundarySpec bc = BoundarySpec::uniform(
      {1, 2, 3, 4}, condition(DisplacementCondition::Fixed, PressureCondition::Robin));
  for (auto& [k, c] : bc.markers) c.conductance = 1.5;
  const FemSystem lumped = assemble(m, kParams, bc, {}, {true});
  const FemSystem consistent = assemble(m, kParams, bc);
  const Vector ones(lumped.system.n_p(), 1.0);
  CHECK(linalg::dot(ones, linalg::spmv(lumped.system.b, ones)) ==
        doctest::Approx(linalg::dot(ones, linalg::spmv(consistent.system.b, ones))).epsilon(1e-12));
}

TEST_CASE("assembly is bit-identical across thread counts") {
#ifdef _OPENMP
  const TriMesh m = make_annulus_mesh(1.0, 2.0, 6);
  const auto bc = BoundarySpec::uniform(
      {1, 2}, condition(DisplacementCondition::Fixed, PressureCondition::Dirichlet));
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const FemSystem one = assemble(m, kParams, bc);
  omp_set_num_threads(4);
  const FemSystem four = assemble(m, kParams, bc);
  omp_set_num_threads(saved);
  CHECK(std::equal(one.system.a.values().begin(), one.system.a.values().end(),
                   four.system.a.values().begin()));
  CHECK(std::equal(one.system.d.values().begin(), one.system.d.values().end(),
                   four.system.d.values().begin()));
#endif
}

TEST_CASE("patch test: linear fields are reproduced exactly") {
  ExactSolution ex;
  ex.u = [](double x, double y) { return std::array<double, 2>{x + 2.0 * y, 3.0 * x - y}; };
  ex.grad_u = [](double, double) { return std::array<double, 4>{1.0, 2.0, 3.0, -1.0}; };
  ex.p = [](double x, double y) { return 1.0 + x + 2.0 * y; };
  ex.grad_p = [](double, double) { return std::array<double, 2>{1.0, 2.0}; };
  ex.body_force = [](double, double) {
    return std::array<double, 2>{kParams.alpha * 1.0, kParams.alpha * 2.0};
  };
  ex.source = [](double, double) { return 0.0; };
  const H1Errors e = solve_manufactured(make_unit_square_mesh(3), ex, kParams);
  CHECK(e.u < 1e-11);
  CHECK(e.p < 1e-11);
}

TEST_CASE("manufactured solution converges at the Taylor-Hood rates") {
  const model::MaterialParams params{1.0, 1.0, 0.5, 2.0, 1.0, 1.0};
  std::vector<TriMesh> meshes;
  for (std::size_t n : {4, 8, 16}) meshes.push_back(make_unit_square_mesh(n));
  const ManufacturedStudy st = manufactured_error(meshes, sine_solution(params), params);
  REQUIRE(st.u_orders.size() == 2);
  CHECK(st.u_orders.back() == doctest::Approx(2.0).epsilon(0.15));
  CHECK(st.p_orders.back() == doctest::Approx(1.0).epsilon(0.3));
}

TEST_CASE("effective coupling of assembled systems") {
  const auto bc = BoundarySpec::uniform(
      {1, 2, 3, 4}, condition(DisplacementCondition::Fixed, PressureCondition::Dirichlet));
  for (const auto& params : {model::materials::brain_matter(), model::materials::shale(), kParams}) {
    const FemSystem fs = assemble(make_unit_square_mesh(4), params, bc);
    const double w_eff = model::effective_coupling(fs.system);
    const Eigen::MatrixXd a = oracle::dense(fs.system.a), d = oracle::dense(fs.system.d);
    const Eigen::MatrixXd k = d * a.llt().solve(d.transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(k, oracle::dense(fs.system.c));
    CHECK(w_eff == doctest::Approx(ges.eigenvalues().maxCoeff()).epsilon(1e-9));
    CHECK(w_eff <= model::coupling_parameter(params) + 1e-6);
  }
}

TEST_CASE("neutral state") {
  const TriMesh m = make_unit_square_mesh(4);
  const auto closed = BoundarySpec::uniform(
      {1, 2, 3, 4}, condition(DisplacementCondition::Fixed, PressureCondition::NoFlux));
  const FemSystem sealed = assemble(m, kParams, closed);
  CHECK_THROWS_AS(neutral_state(sealed.system), SingularSystemError);

  BoundarySpec bc = closed;
  bc.markers[4].pressure = PressureCondition::Dirichlet;
  bc.markers[4].pressure_value = [](double, double) { return 2.0; };
  bc.markers[2].pressure = PressureCondition::Robin;
  bc.markers[2].conductance = 1.0;
  bc.markers[2].exterior_pressure = 1.0;
  FemSystem fs = assemble(m, kParams, bc);
  apply_neutral_state(fs.system);
  const auto& sys = fs.system;
  CHECK(model::consistency_residual(sys) < 1e-12);
  Vector bp = linalg::spmv(sys.b, sys.p0);
  linalg::axpy(-1.0, sys.g.at(0.0), bp);
  CHECK(linalg::norm2(bp) < 1e-12);
  const Vector p = fs.full_p(sys.p0);
  CHECK(*std::min_element(p.begin(), p.end()) >= 1.0 - 1e-12);
  CHECK(*std::max_element(p.begin(), p.end()) <= 2.0 + 1e-12);
}
