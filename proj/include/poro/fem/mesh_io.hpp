#pragma once

#include <filesystem>
#include <iosfwd>

#include "poro/fem/mesh.hpp"

namespace poro::fem {

/// Text format (see docs/formats.md):
///   poro-mesh 1
///   vertices N      followed by N lines "x y"
///   triangles M     followed by M lines "a b c" (0-based, counterclockwise)
///   boundary_edges E  followed by E lines "a b marker"
void write_mesh(std::ostream& out, const TriMesh& mesh);
void write_mesh(const std::filesystem::path& path, const TriMesh& mesh);
/// Validates the mesh after reading.
TriMesh read_mesh(std::istream& in);
TriMesh read_mesh(const std::filesystem::path& path);

}  // namespace poro::fem
