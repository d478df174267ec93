#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "plateopt/fem.hpp"

namespace plateopt {

enum class SolverBackend { cholesky, pcg };

SolverBackend solver_backend_from_name(std::string_view name);
std::string_view to_string(SolverBackend backend) noexcept;

struct SolverOptions {
  SolverBackend backend = SolverBackend::cholesky;
  double relative_tolerance = 1e-10;
  std::size_t max_iterations = 50000;
};

struct SolveStats {
  double relative_residual = 0.0;
  std::size_t iterations = 0;
};

/// Preconditioned conjugate gradients with diagonal (Jacobi) scaling on a CSR
/// matrix. Returns the achieved relative residual; x holds the initial guess on
/// entry.
SolveStats pcg(const CsrPattern& pattern, std::span<const double> values, std::span<const double> rhs,
               std::span<double> x, double relative_tolerance, std::size_t max_iterations);

/// Reusable solver for operators sharing one sparsity pattern. The symbolic
/// Cholesky analysis runs once per pattern; factorize() refreshes the numeric
/// factor for new values. Not thread-safe; use one instance per thread.
class LinearSolver {
 public:
  explicit LinearSolver(SolverOptions options = {});
  ~LinearSolver();
  LinearSolver(LinearSolver&&) noexcept;
  LinearSolver& operator=(LinearSolver&&) noexcept;

  void factorize(const SparseOperator& op);

  /// Solves A u = b on the free dofs; u vanishes on the boundary of D.
  /// Throws SolverError if the relative residual exceeds the tolerance.
  [[nodiscard]] NodalField solve(const LoadVector& b) const;
  [[nodiscard]] const SolveStats& last_stats() const noexcept { return stats_; }
  [[nodiscard]] const SolverOptions& options() const noexcept { return options_; }

 private:
  struct Impl;
  SolverOptions options_;
  std::unique_ptr<Impl> impl_;
  mutable SolveStats stats_;
};

/// One-shot factorize-and-solve.
NodalField solve(const SparseOperator& op, const LoadVector& b, SolverOptions options = {});

}  // namespace plateopt
