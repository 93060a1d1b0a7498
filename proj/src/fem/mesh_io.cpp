#include "poro/fem/mesh_io.hpp"

#include <fstream>
#include <iomanip>
#include <string>

#include "poro/error.hpp"

namespace poro::fem {

void write_mesh(std::ostream& out, const TriMesh& mesh) {
  out << "poro-mesh 1\n";
  out << std::setprecision(17);
  out << "vertices " << mesh.vertices.size() << '\n';
  for (const auto& v : mesh.vertices) out << v.x << ' ' << v.y << '\n';
  out << "triangles " << mesh.triangles.size() << '\n';
  for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "boundary_edges " << mesh.boundary_edges.size() << '\n';
  for (const auto& e : mesh.boundary_edges) out << e.a << ' ' << e.b << ' ' << e.marker << '\n';
  if (!out) throw IoError("mesh: write failed");
}

void write_mesh(const std::filesystem::path& path, const TriMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_mesh(out, mesh);
}

namespace {

std::size_t expect_section(std::istream& in, const std::string& name) {
  std::string word;
  std::size_t count = 0;
  if (!(in >> word >> count) || word != name) throw IoError("mesh: expected section '" + name + "'");
  return count;
}

}  // namespace

TriMesh read_mesh(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "poro-mesh" || version != 1) {
    throw IoError("mesh: missing 'poro-mesh 1' header");
  }
  TriMesh m;
  m.vertices.resize(expect_section(in, "vertices"));
  for (auto& v : m.vertices) {
    if (!(in >> v.x >> v.y)) throw IoError("mesh: bad vertex line");
  }
  m.triangles.resize(expect_section(in, "triangles"));
  for (auto& t : m.triangles) {
    if (!(in >> t[0] >> t[1] >> t[2])) throw IoError("mesh: bad triangle line");
  }
  m.boundary_edges.resize(expect_section(in, "boundary_edges"));
  for (auto& e : m.boundary_edges) {
    if (!(in >> e.a >> e.b >> e.marker)) throw IoError("mesh: bad boundary edge line");
  }
  m.validate();
  return m;
}

TriMesh read_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_mesh(in);
}

}  // namespace poro::fem
