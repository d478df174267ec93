#include "plateopt/linear_solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <stdexcept>
#include <string>

namespace plateopt {

SolverBackend solver_backend_from_name(std::string_view name) {
  if (name == "cholesky") return SolverBackend::cholesky;
  if (name == "pcg") return SolverBackend::pcg;
  throw std::invalid_argument("unknown solver backend '" + std::string(name) + "'");
}

std::string_view to_string(SolverBackend backend) noexcept {
  return backend == SolverBackend::cholesky ? "cholesky" : "pcg";
}

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void csr_multiply(const CsrPattern& p, std::span<const double> values, std::span<const double> x,
                  std::span<double> y) {
  for (int r = 0; r < p.rows(); ++r) {
    double sum = 0.0;
    for (int k = p.row_ptr[r]; k < p.row_ptr[r + 1]; ++k) sum += values[k] * x[p.col[k]];
    y[r] = sum;
  }
}

}  // namespace

SolveStats pcg(const CsrPattern& pattern, std::span<const double> values, std::span<const double> rhs,
               std::span<double> x, double relative_tolerance, std::size_t max_iterations) {
  const auto n = static_cast<std::size_t>(pattern.rows());
  std::vector<double> inv_diag(n, 1.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (int k = pattern.row_ptr[r]; k < pattern.row_ptr[r + 1]; ++k) {
      if (pattern.col[k] == static_cast<int>(r) && values[k] != 0.0) inv_diag[r] = 1.0 / values[k];
    }
  }
  const double rhs_norm = norm2(rhs);
  SolveStats stats;
  if (rhs_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return stats;
  }
  std::vector<double> r(n), z(n), p(n), ap(n);
  csr_multiply(pattern, values, x, ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ap[i];
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = 0.0;
  for (std::size_t i = 0; i < n; ++i) rz += r[i] * z[i];
  stats.relative_residual = norm2(r) / rhs_norm;
  while (stats.relative_residual > relative_tolerance && stats.iterations < max_iterations) {
    csr_multiply(pattern, values, p, ap);
    double pap = 0.0;
    for (std::size_t i = 0; i < n; ++i) pap += p[i] * ap[i];
    if (!(pap > 0.0)) break;  // loss of positive definiteness
    const double alpha = rz / pap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    ++stats.iterations;
    stats.relative_residual = norm2(r) / rhs_norm;
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    double rz_next = 0.0;
    for (std::size_t i = 0; i < n; ++i) rz_next += r[i] * z[i];
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  return stats;
}

struct LinearSolver::Impl {
  using Matrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

  std::shared_ptr<const CsrPattern> pattern;
  std::shared_ptr<const DofLayout> layout;
  std::uint64_t mesh_id = 0;
  std::vector<double> values;
  Eigen::SimplicialLLT<Matrix, Eigen::Lower> cholesky;
  bool analyzed = false;

  // The operator is symmetric, so its CSR arrays are also its CSC arrays.
  Matrix to_eigen() const {
    const int n = pattern->rows();
    Eigen::Map<const Matrix> map(n, n, static_cast<int>(pattern->nnz()), pattern->row_ptr.data(),
                                 pattern->col.data(), values.data());
    return Matrix(map);
  }
};

LinearSolver::LinearSolver(SolverOptions options) : options_(options), impl_(std::make_unique<Impl>()) {}
LinearSolver::~LinearSolver() = default;
LinearSolver::LinearSolver(LinearSolver&&) noexcept = default;
LinearSolver& LinearSolver::operator=(LinearSolver&&) noexcept = default;

void LinearSolver::factorize(const SparseOperator& op) {
  auto& impl = *impl_;
  const bool same_pattern = impl.pattern == op.shared_pattern();
  impl.pattern = op.shared_pattern();
  impl.mesh_id = op.mesh_id();
  impl.values.assign(op.values().begin(), op.values().end());
  impl.layout = op.shared_layout();
  if (options_.backend != SolverBackend::cholesky) return;
  const auto matrix = impl.to_eigen();
  if (!same_pattern || !impl.analyzed) {
    impl.cholesky.analyzePattern(matrix);
    impl.analyzed = true;
  }
  impl.cholesky.factorize(matrix);
  if (impl.cholesky.info() != Eigen::Success) {
    throw SolverError("Cholesky factorization failed (operator not positive definite)", 1.0, 0);
  }
}

NodalField LinearSolver::solve(const LoadVector& b) const {
  const auto& impl = *impl_;
  if (!impl.pattern) throw std::logic_error("LinearSolver::solve called before factorize");
  if (b.mesh_id != impl.mesh_id) throw MeshMismatch();
  const auto& layout = *impl.layout;
  const int n = layout.num_free();
  std::vector<double> rhs(n), x(n, 0.0);
  for (int d = 0; d < n; ++d) rhs[d] = b.values[layout.free_vertex[d]];
  const double rhs_norm = norm2(rhs);

  stats_ = {};
  if (rhs_norm > 0.0) {
    if (options_.backend == SolverBackend::cholesky) {
      Eigen::Map<const Eigen::VectorXd> rhs_map(rhs.data(), n);
      Eigen::Map<Eigen::VectorXd> x_map(x.data(), n);
      x_map = impl.cholesky.solve(rhs_map);
      std::vector<double> ax(n);
      csr_multiply(*impl.pattern, impl.values, x, ax);
      std::vector<double> r(n);
      for (int i = 0; i < n; ++i) r[i] = rhs[i] - ax[i];
      stats_.relative_residual = norm2(r) / rhs_norm;
      // One step of iterative refinement absorbs round-off in stiff cases.
      if (stats_.relative_residual > options_.relative_tolerance) {
        Eigen::Map<const Eigen::VectorXd> r_map(r.data(), n);
        Eigen::VectorXd dx = impl.cholesky.solve(r_map);
        x_map += dx;
        csr_multiply(*impl.pattern, impl.values, x, ax);
        for (int i = 0; i < n; ++i) r[i] = rhs[i] - ax[i];
        stats_.relative_residual = norm2(r) / rhs_norm;
        stats_.iterations = 1;
      }
    } else {
      stats_ = pcg(*impl.pattern, impl.values, rhs, x, options_.relative_tolerance, options_.max_iterations);
    }
    if (!(stats_.relative_residual <= options_.relative_tolerance)) {
      throw SolverError("linear solve did not reach tolerance", stats_.relative_residual, stats_.iterations);
    }
  }

  NodalField u(b.mesh_id, std::vector<double>(b.values.size(), 0.0));
  for (int d = 0; d < n; ++d) u[layout.free_vertex[d]] = x[d];
  return u;
}

NodalField solve(const SparseOperator& op, const LoadVector& b, SolverOptions options) {
  LinearSolver solver(options);
  solver.factorize(op);
  return solver.solve(b);
}

}  // namespace plateopt
