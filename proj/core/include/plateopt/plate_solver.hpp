#pragma once

#include <optional>

#include "plateopt/cost.hpp"
#include "plateopt/heaviside.hpp"
#include "plateopt/levelset.hpp"
#include "plateopt/linear_solver.hpp"

namespace plateopt {

/// Penalized cascade solution: z first, then y, both on all of D with
/// homogeneous Dirichlet data on the boundary of D.
struct StatePair {
  NodalField y;
  NodalField z;
  double epsilon = 0.0;
  NodalField g;  // parametrization the state was computed for
};

struct AdjointPair {
  NodalField p;
  NodalField q;
  CostKind kind = CostKind::quadratic_omega;
};

struct Variation {
  NodalField u;  // derivative of z along v
  NodalField w;  // derivative of y along v
};

/// Solver workspace for one geometry at a time.
///
/// All the boundary value problems share the left-hand side
/// -Laplace + (1/eps)(1 - H^eps(g)); set_geometry() assembles and factorizes it
/// once, after which state, adjoint and variation solves are back-substitutions.
/// The symbolic factorization is kept across geometries.
class PlateSolver {
 public:
  PlateSolver(const FemSystem& fem, HeavisideProfile profile, SolverOptions options = {});

  void set_geometry(const LevelSetParam& param);

  [[nodiscard]] const FemSystem& fem() const noexcept { return *fem_; }
  [[nodiscard]] const HeavisideProfile& profile() const noexcept { return profile_; }
  [[nodiscard]] const IndicatorValues& indicator() const;
  [[nodiscard]] const LevelSetParam& geometry() const;
  [[nodiscard]] const SparseOperator& op() const;

  /// -Laplace z + (1/eps)(1 - H) z = f, then -Laplace y + (1/eps)(1 - H) y = z.
  [[nodiscard]] StatePair solve_state(const NodalField& f) const;
  /// p with the right side of the chosen cost, then q with right side p.
  [[nodiscard]] AdjointPair solve_adjoint(const StatePair& state, const CostSpec& spec) const;
  /// Linearized state along the direction v of g.
  [[nodiscard]] Variation solve_variation(const StatePair& state, const NodalField& v) const;

  /// Right-hand side of the p-equation as a dual vector.
  [[nodiscard]] LoadVector adjoint_load(const StatePair& state, const CostSpec& spec) const;

 private:
  const FemSystem* fem_;
  HeavisideProfile profile_;
  LinearSolver solver_;
  std::optional<LevelSetParam> param_;
  std::optional<IndicatorValues> indicator_;
  std::optional<SparseOperator> op_;
};

/// Penalization weight (1/eps)(1 - H^eps(g)) at quadrature points.
QuadField penalty_weight(const IndicatorValues& indicator, double epsilon);

StatePair solve_state(const FemSystem& fem, const LevelSetParam& param, const HeavisideProfile& profile,
                      const NodalField& f, SolverOptions options = {});

}  // namespace plateopt
