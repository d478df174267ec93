#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "plateopt/functional.hpp"

namespace plateopt::verify {

/// Closed-form Navier plate on a disk of radius a under a constant load f:
/// DeltaDelta y = f, y = Delta y = 0 at r = a, written as the cascade
/// -Delta z = f, -Delta y = z.
struct RadialOracle {
  double radius = 0.5;
  double load = 3.0;

  [[nodiscard]] double z(double r) const noexcept { return load * (radius * radius - r * r) / 4.0; }
  [[nodiscard]] double y(double r) const noexcept {
    const double a2 = radius * radius;
    return load * (r * r * r * r - 4.0 * a2 * r * r + 3.0 * a2 * a2) / 64.0;
  }
  /// Level-set function a^2 - r^2 of the disk.
  [[nodiscard]] double level(Point2 x) const noexcept { return radius * radius - x.x1 * x.x1 - x.x2 * x.x2; }

  /// max over sampled radii of |Delta_h Delta_h y - f| / f with the radial
  /// central-difference Laplacian u'' + u'/r.
  [[nodiscard]] double bilaplacian_residual(double h = 1e-2, int samples = 50) const;
};

/// Smooth Dirichlet eigenfunction of D: sin(pi (x1+1)/2) sin(pi (x2+1)/2),
/// with -Delta u = (pi^2 / 2) u.
double manufactured_mode(Point2 x);
inline constexpr double kManufacturedEigenvalue = 4.934802200544679;  // pi^2 / 2

struct PoissonRow {
  int n = 0;
  double h = 0.0;
  double l2_error = 0.0;
  double rate = 0.0;  // log2 of the error ratio to the previous row, 0 for the first
};

/// Solves -Delta u = (pi^2/2) u_exact on structured meshes with the given
/// vertex counts per side and reports the L2 error against the exact mode.
std::vector<PoissonRow> manufactured_poisson_study(std::span<const int> sizes, SolverOptions options = {});

struct EpsilonRow {
  double epsilon = 0.0;
  double interior_l2_error = 0.0;  // relative, over r < a
  double exterior_energy = 0.0;    // \int (1 - H^eps) y^2
  double y_center = 0.0;
  double z_center = 0.0;
};

/// Penalized cascade on the oracle disk for a sequence of epsilons.
std::vector<EpsilonRow> convergence_study_epsilon(const FemSystem& fem, const RadialOracle& oracle,
                                                  std::span<const double> epsilons,
                                                  HeavisideKind kind = HeavisideKind::exponential);

struct GradientRow {
  double lambda = 0.0;
  double fd_derivative = 0.0;
  double adjoint_derivative = 0.0;
  double relative_gap = 0.0;
};

/// Central differences of the cost along v against the adjoint derivative.
std::vector<GradientRow> gradient_fd_check(const FemSystem& fem, const LevelSetParam& param,
                                           const HeavisideProfile& profile, const CostSpec& spec,
                                           const NodalField& f, const NodalField& v, std::span<const double> lambdas);

struct VariationRow {
  double lambda = 0.0;
  double gap_u = 0.0;  // ||(z(g + lambda v) - z(g)) / lambda - u|| / ||u||
  double gap_w = 0.0;  // same for y and w
};

std::vector<VariationRow> variation_fd_check(const FemSystem& fem, const LevelSetParam& param,
                                             const HeavisideProfile& profile, const NodalField& f,
                                             const NodalField& v, std::span<const double> lambdas);

double best_gap(std::span<const GradientRow> rows);
double best_gap(std::span<const VariationRow> rows);

void write_csv(std::ostream& out, std::span<const PoissonRow> rows);
void write_csv(std::ostream& out, std::span<const EpsilonRow> rows);
void write_csv(std::ostream& out, std::span<const GradientRow> rows);
void write_csv(std::ostream& out, std::span<const VariationRow> rows);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The oracle suite behind `plateopt verify --all`. `mesh_n` sets the
/// resolution of the plate oracle; the derivative checks run on a coarser
/// mesh where central differences are well conditioned.
std::vector<CheckResult> run_all(int mesh_n = 161, std::ostream* tables = nullptr);

}  // namespace plateopt::verify
