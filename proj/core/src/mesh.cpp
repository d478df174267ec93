#include "plateopt/mesh.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

namespace plateopt {

namespace {

std::uint64_t next_mesh_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

double signed_area(const Point2& a, const Point2& b, const Point2& c) {
  return 0.5 * ((b.x1 - a.x1) * (c.x2 - a.x2) - (c.x1 - a.x1) * (b.x2 - a.x2));
}

constexpr double kBoundaryTol = 1e-14;

}  // namespace

TriMesh::TriMesh(std::vector<Point2> vertices, std::vector<Triangle> triangles)
    : id_(next_mesh_id()), vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const auto nv = static_cast<int>(vertices_.size());
  areas_.reserve(triangles_.size());
  for (const auto& t : triangles_) {
    for (int v : t) {
      if (v < 0 || v >= nv) throw std::invalid_argument("TriMesh: vertex index out of range");
    }
    const double a = signed_area(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
    if (!(a > 0.0)) throw std::invalid_argument("TriMesh: triangle with non-positive signed area");
    areas_.push_back(a);
  }
  boundary_.resize(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const auto& p = vertices_[i];
    boundary_[i] = (std::abs(std::abs(p.x1) - 1.0) <= kBoundaryTol ||
                    std::abs(std::abs(p.x2) - 1.0) <= kBoundaryTol)
                       ? 1
                       : 0;
  }
}

std::shared_ptr<const TriMesh> TriMesh::build_structured(int n_per_side) {
  if (n_per_side < 2) {
    throw std::invalid_argument("build_structured: n_per_side must be >= 2, got " +
                                std::to_string(n_per_side));
  }
  const int n = n_per_side;
  std::vector<Point2> vertices;
  vertices.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      vertices.push_back({-1.0 + 2.0 * i / (n - 1), -1.0 + 2.0 * j / (n - 1)});
    }
  }
  std::vector<Triangle> triangles;
  triangles.reserve(2 * static_cast<std::size_t>(n - 1) * (n - 1));
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      const int v00 = j * n + i;
      const int v10 = v00 + 1;
      const int v01 = v00 + n;
      const int v11 = v01 + 1;
      triangles.push_back({v00, v10, v11});
      triangles.push_back({v00, v11, v01});
    }
  }
  TriMesh mesh(std::move(vertices), std::move(triangles));
  mesh.n_per_side_ = n;
  return std::make_shared<const TriMesh>(std::move(mesh));
}

MeshStatistics mesh_statistics(const TriMesh& mesh) {
  MeshStatistics s;
  s.min_area = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    s.min_area = std::min(s.min_area, mesh.area(t));
    s.max_area = std::max(s.max_area, mesh.area(t));
    const auto& tri = mesh.triangle(t);
    for (int k = 0; k < 3; ++k) {
      const auto& a = mesh.vertex(tri[k]);
      const auto& b = mesh.vertex(tri[(k + 1) % 3]);
      s.h_max = std::max(s.h_max, std::hypot(b.x1 - a.x1, b.x2 - a.x2));
    }
  }
  return s;
}

std::string validate(const TriMesh& mesh) {
  // Each directed edge may appear once; an interior edge must appear in both
  // directions, a boundary edge must lie on the box boundary.
  std::map<std::pair<int, int>, int> directed;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    if (!(mesh.area(t) > 0.0)) return "triangle " + std::to_string(t) + " has non-positive area";
    for (int k = 0; k < 3; ++k) {
      const std::pair<int, int> e{tri[k], tri[(k + 1) % 3]};
      if (++directed[e] > 1) return "edge repeated with the same orientation";
    }
  }
  for (const auto& [e, count] : directed) {
    if (directed.count({e.second, e.first}) != 0) continue;
    const auto& a = mesh.vertex(e.first);
    const auto& b = mesh.vertex(e.second);
    const bool on_side = (std::abs(a.x1 - b.x1) < kBoundaryTol && std::abs(std::abs(a.x1) - 1.0) < kBoundaryTol) ||
                         (std::abs(a.x2 - b.x2) < kBoundaryTol && std::abs(std::abs(a.x2) - 1.0) < kBoundaryTol);
    if (!on_side) return "non-conforming edge (hanging or unmatched) in the interior";
  }
  return {};
}

void write_vtk_mesh(std::ostream& out, const TriMesh& mesh) {
  out << "# vtk DataFile Version 3.0\nplateopt mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  out.precision(17);
  for (const auto& p : mesh.vertices()) out << p.x1 << ' ' << p.x2 << " 0\n";
  out << "CELLS " << mesh.num_triangles() << ' ' << 4 * mesh.num_triangles() << '\n';
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << mesh.num_triangles() << '\n';
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) out << "5\n";
}

}  // namespace plateopt
