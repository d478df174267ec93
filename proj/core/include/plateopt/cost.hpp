#pragma once

#include <string_view>

#include "plateopt/fem.hpp"
#include "plateopt/levelset.hpp"

namespace plateopt {

enum class CostKind {
  tracking_E,       // 1/2 \int_E (y - y_d)^2
  quadratic_omega,  // \int_D H^eps(g) (y - y_d)^2 / 2
  linear_omega,     // \int_D H^eps(g) (y - y_d)
};

CostKind cost_kind_from_name(std::string_view name);
std::string_view to_string(CostKind kind) noexcept;

struct CostSpec {
  CostKind kind = CostKind::quadratic_omega;
  NodalField target;  // y_d
  Region region;      // E, required for tracking_E

  /// Pointwise integrand J(y) for the omega kinds (and the tracking integrand on E).
  [[nodiscard]] double integrand(double y, double y_d) const noexcept {
    const double diff = y - y_d;
    return kind == CostKind::linear_omega ? diff : 0.5 * diff * diff;
  }
  /// dJ/dy
  [[nodiscard]] double integrand_derivative(double y, double y_d) const noexcept {
    return kind == CostKind::linear_omega ? 1.0 : y - y_d;
  }
  [[nodiscard]] bool weighted_by_domain() const noexcept { return kind != CostKind::tracking_E; }
};

/// Throws std::invalid_argument if the spec is inconsistent (tracking_E without
/// a region, or a target on another mesh).
void validate(const CostSpec& spec, const FemSystem& fem);

}  // namespace plateopt
