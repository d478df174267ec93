#include "plateopt/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace plateopt {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_match(const TriMesh& mesh, const NodalField& field) {
  if (field.mesh_id() != mesh.id() || field.size() != mesh.num_vertices()) {
    throw MeshMismatch();
  }
}

}  // namespace

void write_field_csv(std::ostream& out, const TriMesh& mesh, const NodalField& field) {
  require_match(mesh, field);
  out << "vertex_index,x1,x2,value\n";
  for (std::size_t i = 0; i < mesh.num_vertices(); ++i) {
    const Point2 p = mesh.vertex(i);
    out << i << ',' << num(p.x1) << ',' << num(p.x2) << ',' << num(field[i]) << '\n';
  }
}

void write_vtk_fields(std::ostream& out, const TriMesh& mesh,
                      const std::vector<std::pair<std::string, const NodalField*>>& fields) {
  out << "# vtk DataFile Version 3.0\nplateopt fields\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (const Point2& p : mesh.vertices()) out << num(p.x1) << ' ' << num(p.x2) << " 0\n";
  out << "CELLS " << mesh.num_triangles() << ' ' << 4 * mesh.num_triangles() << '\n';
  for (const Triangle& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << mesh.num_triangles() << '\n';
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) out << "5\n";
  if (fields.empty()) return;
  out << "POINT_DATA " << mesh.num_vertices() << '\n';
  for (const auto& [name, field] : fields) {
    require_match(mesh, *field);
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (std::size_t i = 0; i < field->size(); ++i) out << num((*field)[i]) << '\n';
  }
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) noexcept {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t file_checksum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::uint64_t h = 14695981039346656037ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    h = fnv1a64(std::string_view(buf, static_cast<std::size_t>(in.gcount())), h);
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace plateopt
