#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plateopt {

/// Fields, operators or load vectors built on different meshes were combined.
class MeshMismatch : public std::invalid_argument {
 public:
  MeshMismatch() : std::invalid_argument("operands belong to different meshes") {}
};

/// The linear solver failed to reach the requested residual.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double relative_residual, std::size_t iterations)
      : std::runtime_error(what + " (relative residual " + std::to_string(relative_residual) + " after " +
                           std::to_string(iterations) + " iterations)"),
        residual_(relative_residual),
        iterations_(iterations) {}

  [[nodiscard]] double residual() const noexcept { return residual_; }
  [[nodiscard]] std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

}  // namespace plateopt
