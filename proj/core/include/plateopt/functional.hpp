#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "plateopt/cost.hpp"
#include "plateopt/plate_solver.hpp"

namespace plateopt {

/// Cost of a solved state. Omega kinds weight the integrand by H^eps(g),
/// tracking_E restricts it to E; both use the 3-point rule.
double evaluate_cost(const FemSystem& fem, const StatePair& state, const CostSpec& spec,
                     const IndicatorValues& indicator);

/// Derivative of the discrete cost with respect to g.
///
/// `bracket` is the integrand B at quadrature points such that the derivative
/// along v is \int_D B v: (1/eps) H'(g) (y p + z q) for tracking_E and
/// H'(g) [J(y) + (1/eps)(y p + z q)] for the omega kinds.
struct GradientReport {
  QuadField bracket;
  LoadVector dual;     // \int B phi_i
  NodalField field;    // L2 projection of B onto P1
  double descent_value = 0.0;  // derivative along the chosen direction, when one is set

  [[nodiscard]] double directional_derivative(const FemSystem& fem, const NodalField& v) const;
};

GradientReport gradient_field(const FemSystem& fem, const StatePair& state, const AdjointPair& adjoint,
                              const CostSpec& spec, const IndicatorValues& indicator);

enum class DescentVariant {
  bracket,    // w = -[J(y) + (1/eps)(y p + z q)] at the vertices
  saturated,  // R(w / eps) at the vertices
  steepest,   // minus the L2 gradient field
};

DescentVariant descent_variant_from_name(std::string_view name);
std::string_view to_string(DescentVariant variant) noexcept;

/// The bracket w at the vertices (the first variant). For tracking_E the J term is absent.
NodalField bracket_direction(const StatePair& state, const AdjointPair& adjoint, const CostSpec& spec);

NodalField descent_direction(const FemSystem& fem, const StatePair& state, const AdjointPair& adjoint,
                             const CostSpec& spec, const IndicatorValues& indicator, DescentVariant variant);

struct StationarityReport {
  double max_pairing = 0.0;   // max over admissible sampled v of \int B v
  double gradient_norm = 0.0; // ||B||_{L2}
  std::size_t admissible = 0;
  [[nodiscard]] bool stationary(double tol = 0.0) const noexcept { return max_pairing <= tol; }
};

/// First-order condition check over a sample of directions. With a
/// constrained parametrization, a direction is admissible only if v >= 0 at
/// the vertices of E where g = 0.
StationarityReport stationarity_check(const FemSystem& fem, const GradientReport& gradient,
                                      std::span<const NodalField> directions,
                                      const LevelSetParam* param = nullptr);

}  // namespace plateopt
