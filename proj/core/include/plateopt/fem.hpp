#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

#include "plateopt/errors.hpp"
#include "plateopt/mesh.hpp"

namespace plateopt {

/// Continuous piecewise-linear scalar field, one value per mesh vertex.
class NodalField {
 public:
  NodalField() = default;
  NodalField(const TriMesh& mesh, double value = 0.0)
      : values_(mesh.num_vertices(), value), mesh_id_(mesh.id()) {}
  NodalField(std::uint64_t mesh_id, std::vector<double> values)
      : values_(std::move(values)), mesh_id_(mesh_id) {}

  static NodalField interpolate(const TriMesh& mesh, const std::function<double(Point2)>& fn);

  [[nodiscard]] std::uint64_t mesh_id() const noexcept { return mesh_id_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::span<double> values() noexcept { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  [[nodiscard]] bool all_finite() const;
  [[nodiscard]] double max_abs() const;

  NodalField& operator+=(const NodalField& other);
  NodalField& operator-=(const NodalField& other);
  NodalField& operator*=(double s);
  /// this += s * other
  NodalField& axpy(double s, const NodalField& other);

 private:
  std::vector<double> values_;
  std::uint64_t mesh_id_ = 0;
};

NodalField operator+(NodalField a, const NodalField& b);
NodalField operator-(NodalField a, const NodalField& b);
NodalField operator*(double s, NodalField a);

/// Values at the 3 edge-midpoint quadrature points of every triangle, laid out
/// as [3 * t + k] where k = 0,1,2 is the midpoint of edge (v_k, v_{k+1}).
class QuadField {
 public:
  QuadField() = default;
  QuadField(std::uint64_t mesh_id, std::vector<double> values)
      : values_(std::move(values)), mesh_id_(mesh_id) {}

  [[nodiscard]] std::uint64_t mesh_id() const noexcept { return mesh_id_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::span<double> values() noexcept { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
  std::uint64_t mesh_id_ = 0;
};

/// Dual vector: entry i holds an integral against the hat function of vertex i.
struct LoadVector {
  std::vector<double> values;
  std::uint64_t mesh_id = 0;
};

/// Compressed-row sparsity pattern, shared by every operator on one mesh.
struct CsrPattern {
  std::vector<int> row_ptr;
  std::vector<int> col;
  [[nodiscard]] int rows() const { return static_cast<int>(row_ptr.size()) - 1; }
  [[nodiscard]] std::size_t nnz() const { return col.size(); }
};

/// Numbering of the free (non-Dirichlet) vertices.
struct DofLayout {
  std::vector<int> free_index;   // vertex -> free dof, -1 on the boundary of D
  std::vector<int> free_vertex;  // free dof -> vertex
  [[nodiscard]] int num_free() const { return static_cast<int>(free_vertex.size()); }
};

/// Symmetric positive-definite matrix of -Laplace + weight*Id on the free dofs,
/// Dirichlet rows and columns eliminated.
class SparseOperator {
 public:
  SparseOperator(std::uint64_t mesh_id, std::shared_ptr<const CsrPattern> pattern,
                 std::shared_ptr<const DofLayout> layout, std::vector<double> values)
      : mesh_id_(mesh_id), pattern_(std::move(pattern)), layout_(std::move(layout)), values_(std::move(values)) {}

  [[nodiscard]] std::uint64_t mesh_id() const noexcept { return mesh_id_; }
  [[nodiscard]] const CsrPattern& pattern() const noexcept { return *pattern_; }
  [[nodiscard]] const std::shared_ptr<const CsrPattern>& shared_pattern() const noexcept { return pattern_; }
  [[nodiscard]] const DofLayout& layout() const noexcept { return *layout_; }
  [[nodiscard]] const std::shared_ptr<const DofLayout>& shared_layout() const noexcept { return layout_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

  /// y = A x on free-dof vectors.
  void multiply(std::span<const double> x, std::span<double> y) const;
  /// Applies the operator to a nodal field (boundary values are ignored) and
  /// returns the result as a load vector with zero boundary entries.
  [[nodiscard]] LoadVector apply(const NodalField& u) const;
  /// Largest |A_ij - A_ji| / max|A| over stored entries.
  [[nodiscard]] double asymmetry() const;
  [[nodiscard]] double diagonal(int row) const;

 private:
  std::uint64_t mesh_id_;
  std::shared_ptr<const CsrPattern> pattern_;
  std::shared_ptr<const DofLayout> layout_;
  std::vector<double> values_;
};

/// P1 discretization on a fixed mesh: caches the sparsity pattern, the exact
/// stiffness matrix and the mass matrix, and evaluates everything at the
/// 3-point edge-midpoint rule (exact for quadratics).
class FemSystem {
 public:
  explicit FemSystem(std::shared_ptr<const TriMesh> mesh);

  [[nodiscard]] const TriMesh& mesh() const noexcept { return *mesh_; }
  [[nodiscard]] const std::shared_ptr<const TriMesh>& shared_mesh() const noexcept { return mesh_; }
  [[nodiscard]] std::uint64_t mesh_id() const noexcept { return mesh_->id(); }
  [[nodiscard]] const DofLayout& layout() const noexcept { return *layout_; }

  [[nodiscard]] std::size_t num_quadrature_points() const noexcept { return 3 * mesh_->num_triangles(); }
  [[nodiscard]] std::span<const Point2> quadrature_points() const noexcept { return quad_points_; }
  /// Quadrature weight (area / 3) of point q.
  [[nodiscard]] double quadrature_weight(std::size_t q) const { return mesh_->area(q / 3) / 3.0; }

  /// Assembles -Laplace + weight*Id with the weight sampled at quadrature
  /// points. Throws std::invalid_argument if any weight is negative.
  [[nodiscard]] SparseOperator assemble(const QuadField& weight) const;
  /// Same, with the weight given as a nodal field interpolated to quadrature points.
  [[nodiscard]] SparseOperator assemble(const NodalField& weight) const;

  /// \int density * phi_i for every vertex i.
  [[nodiscard]] LoadVector load(const QuadField& density) const;
  [[nodiscard]] LoadVector load(const NodalField& density) const;

  [[nodiscard]] QuadField at_quadrature(const NodalField& u) const;
  [[nodiscard]] QuadField constant_quad(double value) const;
  [[nodiscard]] QuadField quad_from_function(const std::function<double(Point2)>& fn) const;

  /// L2 projection onto P1 of a dual vector (solves M u = b).
  [[nodiscard]] NodalField project_l2(const LoadVector& b) const;
  [[nodiscard]] NodalField project_l2(const QuadField& density) const;

  [[nodiscard]] double integrate(const QuadField& integrand) const;
  /// \int weight * prod(factors), factors interpolated at quadrature points.
  [[nodiscard]] double integrate(std::initializer_list<std::reference_wrapper<const NodalField>> factors,
                                 const QuadField& weight) const;
  [[nodiscard]] double integrate(std::initializer_list<std::reference_wrapper<const NodalField>> factors,
                                 double weight = 1.0) const;

  [[nodiscard]] double l2_norm(const NodalField& u) const;
  /// \int |grad u|^2
  [[nodiscard]] double dirichlet_energy(const NodalField& u) const;
  /// Pairing of a dual vector with a nodal field, sum_i b_i u_i.
  [[nodiscard]] double pair(const LoadVector& b, const NodalField& u) const;

  [[nodiscard]] const CsrPattern& full_pattern() const noexcept { return *full_pattern_; }
  [[nodiscard]] std::span<const double> mass_values() const noexcept { return mass_; }

  void check(const NodalField& u) const;
  void check(const QuadField& q) const;
  void check(const LoadVector& b) const;

 private:
  std::shared_ptr<const TriMesh> mesh_;
  std::shared_ptr<const DofLayout> layout_;
  std::shared_ptr<const CsrPattern> pattern_;       // free dofs
  std::shared_ptr<const CsrPattern> full_pattern_;  // all vertices
  std::vector<std::array<int, 9>> local_slot_;      // free-pattern slot per local entry, -1 if eliminated
  std::vector<std::array<int, 9>> full_slot_;
  std::vector<double> stiffness_;
  std::vector<double> mass_;  // consistent mass matrix over all vertices
  std::vector<Point2> quad_points_;
};

}  // namespace plateopt
