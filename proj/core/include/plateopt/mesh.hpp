#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace plateopt {

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

using Triangle = std::array<int, 3>;

/// Conforming P1 triangulation of the box D = ]-1,1[ x ]-1,1[.
///
/// Immutable after construction. Every mesh carries a process-unique id that
/// fields and operators use to detect mixing data from different meshes.
class TriMesh {
 public:
  /// Uniform grid with `n_per_side` vertices per side; each cell is split
  /// along the (i,j)-(i+1,j+1) diagonal. Throws std::invalid_argument for
  /// n_per_side < 2.
  static std::shared_ptr<const TriMesh> build_structured(int n_per_side);

  TriMesh(std::vector<Point2> vertices, std::vector<Triangle> triangles);

  [[nodiscard]] std::uint64_t id() const noexcept { return id_; }
  [[nodiscard]] std::size_t num_vertices() const noexcept { return vertices_.size(); }
  [[nodiscard]] std::size_t num_triangles() const noexcept { return triangles_.size(); }

  [[nodiscard]] std::span<const Point2> vertices() const noexcept { return vertices_; }
  [[nodiscard]] std::span<const Triangle> triangles() const noexcept { return triangles_; }
  [[nodiscard]] std::span<const double> element_areas() const noexcept { return areas_; }
  [[nodiscard]] const Point2& vertex(std::size_t i) const { return vertices_[i]; }
  [[nodiscard]] const Triangle& triangle(std::size_t t) const { return triangles_[t]; }
  [[nodiscard]] double area(std::size_t t) const { return areas_[t]; }
  [[nodiscard]] bool on_boundary(std::size_t i) const { return boundary_[i] != 0; }
  [[nodiscard]] std::span<const std::uint8_t> boundary_mask() const noexcept { return boundary_; }

  /// Grid resolution for structured meshes, 0 otherwise.
  [[nodiscard]] int n_per_side() const noexcept { return n_per_side_; }

 private:
  std::uint64_t id_;
  std::vector<Point2> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<double> areas_;
  std::vector<std::uint8_t> boundary_;
  int n_per_side_ = 0;
};

struct MeshStatistics {
  double min_area = 0.0;
  double max_area = 0.0;
  double h_max = 0.0;
};

MeshStatistics mesh_statistics(const TriMesh& mesh);

/// Checks positivity of areas, index ranges and edge conformity. Returns an
/// empty string when valid, otherwise a description of the first violation.
std::string validate(const TriMesh& mesh);

/// Legacy-VTK ASCII unstructured grid (POINTS / CELLS / CELL_TYPES only).
void write_vtk_mesh(std::ostream& out, const TriMesh& mesh);

}  // namespace plateopt
