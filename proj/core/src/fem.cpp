#include "plateopt/fem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "plateopt/linear_solver.hpp"

namespace plateopt {

namespace {

void require_same(std::uint64_t a, std::uint64_t b) {
  if (a != b) throw MeshMismatch();
}

struct PatternBuild {
  std::shared_ptr<CsrPattern> pattern;
  std::vector<std::array<int, 9>> slots;
};

// Builds the CSR pattern of the P1 connectivity restricted to the dofs given
// by `index` (vertex -> row, -1 to drop), plus the slot of every local entry.
PatternBuild build_pattern(const TriMesh& mesh, const std::vector<int>& index, int rows) {
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(rows));
  for (const auto& tri : mesh.triangles()) {
    for (int a : tri) {
      const int ra = index[a];
      if (ra < 0) continue;
      for (int b : tri) {
        const int rb = index[b];
        if (rb >= 0) adjacency[ra].push_back(rb);
      }
    }
  }
  auto pattern = std::make_shared<CsrPattern>();
  pattern->row_ptr.assign(static_cast<std::size_t>(rows) + 1, 0);
  for (int r = 0; r < rows; ++r) {
    auto& adj = adjacency[r];
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    pattern->row_ptr[r + 1] = pattern->row_ptr[r] + static_cast<int>(adj.size());
  }
  pattern->col.reserve(pattern->row_ptr.back());
  for (const auto& adj : adjacency) pattern->col.insert(pattern->col.end(), adj.begin(), adj.end());

  std::vector<std::array<int, 9>> slots(mesh.num_triangles());
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const int ri = index[tri[i]];
        const int rj = index[tri[j]];
        int slot = -1;
        if (ri >= 0 && rj >= 0) {
          const auto first = pattern->col.begin() + pattern->row_ptr[ri];
          const auto last = pattern->col.begin() + pattern->row_ptr[ri + 1];
          slot = static_cast<int>(std::lower_bound(first, last, rj) - pattern->col.begin());
        }
        slots[t][3 * i + j] = slot;
      }
    }
  }
  return {std::move(pattern), std::move(slots)};
}

}  // namespace

// ---------------------------------------------------------------- NodalField

NodalField NodalField::interpolate(const TriMesh& mesh, const std::function<double(Point2)>& fn) {
  std::vector<double> values(mesh.num_vertices());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = fn(mesh.vertex(i));
  return {mesh.id(), std::move(values)};
}

bool NodalField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double NodalField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

NodalField& NodalField::operator+=(const NodalField& other) { return axpy(1.0, other); }
NodalField& NodalField::operator-=(const NodalField& other) { return axpy(-1.0, other); }

NodalField& NodalField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

NodalField& NodalField::axpy(double s, const NodalField& other) {
  require_same(mesh_id_, other.mesh_id_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += s * other.values_[i];
  return *this;
}

NodalField operator+(NodalField a, const NodalField& b) { return a += b; }
NodalField operator-(NodalField a, const NodalField& b) { return a -= b; }
NodalField operator*(double s, NodalField a) { return a *= s; }

// ------------------------------------------------------------ SparseOperator

void SparseOperator::multiply(std::span<const double> x, std::span<double> y) const {
  const auto& p = *pattern_;
  for (int r = 0; r < p.rows(); ++r) {
    double sum = 0.0;
    for (int k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k) sum += values_[k] * x[p.col[k]];
    y[r] = sum;
  }
}

LoadVector SparseOperator::apply(const NodalField& u) const {
  require_same(mesh_id_, u.mesh_id());
  const auto& layout = *layout_;
  std::vector<double> x(layout.num_free());
  for (int d = 0; d < layout.num_free(); ++d) x[d] = u[layout.free_vertex[d]];
  std::vector<double> y(x.size());
  multiply(x, y);
  LoadVector out{std::vector<double>(u.size(), 0.0), mesh_id_};
  for (int d = 0; d < layout.num_free(); ++d) out.values[layout.free_vertex[d]] = y[d];
  return out;
}

double SparseOperator::asymmetry() const {
  const auto& p = *pattern_;
  double scale = 0.0;
  for (double v : values_) scale = std::max(scale, std::abs(v));
  double worst = 0.0;
  for (int r = 0; r < p.rows(); ++r) {
    for (int k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k) {
      const int c = p.col[k];
      const auto first = p.col.begin() + p.row_ptr[c];
      const auto last = p.col.begin() + p.row_ptr[c + 1];
      const auto it = std::lower_bound(first, last, r);
      const double mirror = (it != last && *it == r) ? values_[it - p.col.begin()] : 0.0;
      worst = std::max(worst, std::abs(values_[k] - mirror));
    }
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

double SparseOperator::diagonal(int row) const {
  const auto& p = *pattern_;
  const auto first = p.col.begin() + p.row_ptr[row];
  const auto last = p.col.begin() + p.row_ptr[row + 1];
  const auto it = std::lower_bound(first, last, row);
  return (it != last && *it == row) ? values_[it - p.col.begin()] : 0.0;
}

// ----------------------------------------------------------------- FemSystem

FemSystem::FemSystem(std::shared_ptr<const TriMesh> mesh) : mesh_(std::move(mesh)) {
  if (!mesh_) throw std::invalid_argument("FemSystem: null mesh");
  const auto nv = mesh_->num_vertices();

  auto layout = std::make_shared<DofLayout>();
  layout->free_index.assign(nv, -1);
  for (std::size_t i = 0; i < nv; ++i) {
    if (!mesh_->on_boundary(i)) {
      layout->free_index[i] = static_cast<int>(layout->free_vertex.size());
      layout->free_vertex.push_back(static_cast<int>(i));
    }
  }
  layout_ = layout;

  auto free_build = build_pattern(*mesh_, layout->free_index, layout->num_free());
  pattern_ = free_build.pattern;
  local_slot_ = std::move(free_build.slots);

  std::vector<int> identity(nv);
  for (std::size_t i = 0; i < nv; ++i) identity[i] = static_cast<int>(i);
  auto full_build = build_pattern(*mesh_, identity, static_cast<int>(nv));
  full_pattern_ = full_build.pattern;
  full_slot_ = std::move(full_build.slots);

  stiffness_.assign(pattern_->nnz(), 0.0);
  mass_.assign(full_pattern_->nnz(), 0.0);
  quad_points_.reserve(3 * mesh_->num_triangles());

  for (std::size_t t = 0; t < mesh_->num_triangles(); ++t) {
    const auto& tri = mesh_->triangle(t);
    const double area = mesh_->area(t);
    std::array<double, 3> b{}, c{};
    for (int i = 0; i < 3; ++i) {
      const auto& pj = mesh_->vertex(tri[(i + 1) % 3]);
      const auto& pk = mesh_->vertex(tri[(i + 2) % 3]);
      b[i] = pj.x2 - pk.x2;
      c[i] = pk.x1 - pj.x1;
      quad_points_.push_back({0.5 * (mesh_->vertex(tri[i]).x1 + pj.x1), 0.5 * (mesh_->vertex(tri[i]).x2 + pj.x2)});
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const int slot = local_slot_[t][3 * i + j];
        if (slot >= 0) stiffness_[slot] += (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
        mass_[full_slot_[t][3 * i + j]] += (i == j ? area / 6.0 : area / 12.0);
      }
    }
  }
}

SparseOperator FemSystem::assemble(const QuadField& weight) const {
  check(weight);
  std::vector<double> values = stiffness_;
  for (std::size_t t = 0; t < mesh_->num_triangles(); ++t) {
    const double c = mesh_->area(t) / 12.0;  // (area / 3) * phi * phi = (area / 3) / 4
    const auto& slot = local_slot_[t];
    for (int k = 0; k < 3; ++k) {
      const double w = weight[3 * t + k];
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw std::invalid_argument("assemble: weight must be finite and nonnegative");
      }
      if (w == 0.0) continue;
      const int a = k;
      const int b = (k + 1) % 3;
      const double m = c * w;
      for (int s : {slot[3 * a + a], slot[3 * a + b], slot[3 * b + a], slot[3 * b + b]}) {
        if (s >= 0) values[s] += m;
      }
    }
  }
  return {mesh_->id(), pattern_, layout_, std::move(values)};
}

SparseOperator FemSystem::assemble(const NodalField& weight) const {
  check(weight);
  if (std::any_of(weight.values().begin(), weight.values().end(), [](double w) { return !(w >= 0.0); })) {
    throw std::invalid_argument("assemble: weight must be nonnegative at every vertex");
  }
  return assemble(at_quadrature(weight));
}

LoadVector FemSystem::load(const QuadField& density) const {
  check(density);
  LoadVector out{std::vector<double>(mesh_->num_vertices(), 0.0), mesh_->id()};
  for (std::size_t t = 0; t < mesh_->num_triangles(); ++t) {
    const auto& tri = mesh_->triangle(t);
    const double c = mesh_->area(t) / 6.0;  // (area / 3) * (1 / 2)
    for (int k = 0; k < 3; ++k) {
      const double v = c * density[3 * t + k];
      out.values[tri[k]] += v;
      out.values[tri[(k + 1) % 3]] += v;
    }
  }
  return out;
}

LoadVector FemSystem::load(const NodalField& density) const { return load(at_quadrature(density)); }

QuadField FemSystem::at_quadrature(const NodalField& u) const {
  check(u);
  std::vector<double> q(num_quadrature_points());
  for (std::size_t t = 0; t < mesh_->num_triangles(); ++t) {
    const auto& tri = mesh_->triangle(t);
    for (int k = 0; k < 3; ++k) q[3 * t + k] = 0.5 * (u[tri[k]] + u[tri[(k + 1) % 3]]);
  }
  return {mesh_->id(), std::move(q)};
}

QuadField FemSystem::constant_quad(double value) const {
  return {mesh_->id(), std::vector<double>(num_quadrature_points(), value)};
}

QuadField FemSystem::quad_from_function(const std::function<double(Point2)>& fn) const {
  std::vector<double> q(num_quadrature_points());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = fn(quad_points_[i]);
  return {mesh_->id(), std::move(q)};
}

NodalField FemSystem::project_l2(const LoadVector& b) const {
  check(b);
  std::vector<double> x(b.values.size(), 0.0);
  const auto stats = pcg(*full_pattern_, mass_, b.values, x, 1e-14, 10000);
  if (stats.relative_residual > 1e-12) {
    throw SolverError("project_l2: mass solve did not converge", stats.relative_residual, stats.iterations);
  }
  return {mesh_->id(), std::move(x)};
}

NodalField FemSystem::project_l2(const QuadField& density) const { return project_l2(load(density)); }

double FemSystem::integrate(const QuadField& integrand) const {
  check(integrand);
  double sum = 0.0;
  for (std::size_t t = 0; t < mesh_->num_triangles(); ++t) {
    sum += mesh_->area(t) / 3.0 * (integrand[3 * t] + integrand[3 * t + 1] + integrand[3 * t + 2]);
  }
  return sum;
}

double FemSystem::integrate(std::initializer_list<std::reference_wrapper<const NodalField>> factors,
                            const QuadField& weight) const {
  check(weight);
  std::vector<double> q(weight.values().begin(), weight.values().end());
  for (const NodalField& f : factors) {
    check(f);
    for (std::size_t t = 0; t < mesh_->num_triangles(); ++t) {
      const auto& tri = mesh_->triangle(t);
      for (int k = 0; k < 3; ++k) q[3 * t + k] *= 0.5 * (f[tri[k]] + f[tri[(k + 1) % 3]]);
    }
  }
  return integrate(QuadField{mesh_->id(), std::move(q)});
}

double FemSystem::integrate(std::initializer_list<std::reference_wrapper<const NodalField>> factors,
                            double weight) const {
  return integrate(factors, constant_quad(weight));
}

double FemSystem::l2_norm(const NodalField& u) const { return std::sqrt(integrate({u, u})); }

double FemSystem::dirichlet_energy(const NodalField& u) const {
  check(u);
  double sum = 0.0;
  for (std::size_t t = 0; t < mesh_->num_triangles(); ++t) {
    const auto& tri = mesh_->triangle(t);
    const double area = mesh_->area(t);
    double gx = 0.0, gy = 0.0;
    for (int i = 0; i < 3; ++i) {
      const auto& pj = mesh_->vertex(tri[(i + 1) % 3]);
      const auto& pk = mesh_->vertex(tri[(i + 2) % 3]);
      gx += u[tri[i]] * (pj.x2 - pk.x2);
      gy += u[tri[i]] * (pk.x1 - pj.x1);
    }
    sum += (gx * gx + gy * gy) / (4.0 * area);
  }
  return sum;
}

double FemSystem::pair(const LoadVector& b, const NodalField& u) const {
  check(b);
  check(u);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += b.values[i] * u[i];
  return sum;
}

void FemSystem::check(const NodalField& u) const {
  if (u.mesh_id() != mesh_->id() || u.size() != mesh_->num_vertices()) throw MeshMismatch();
}
void FemSystem::check(const QuadField& q) const {
  if (q.mesh_id() != mesh_->id() || q.size() != num_quadrature_points()) throw MeshMismatch();
}
void FemSystem::check(const LoadVector& b) const {
  if (b.mesh_id != mesh_->id() || b.values.size() != mesh_->num_vertices()) throw MeshMismatch();
}

}  // namespace plateopt
