#include "plateopt/functional.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace plateopt {

double evaluate_cost(const FemSystem& fem, const StatePair& state, const CostSpec& spec,
                     const IndicatorValues& indicator) {
  validate(spec, fem);
  const QuadField y_q = fem.at_quadrature(state.y);
  const QuadField yd_q = fem.at_quadrature(spec.target);
  QuadField integrand(fem.mesh_id(), std::vector<double>(y_q.size()));
  if (spec.kind == CostKind::tracking_E) {
    const auto points = fem.quadrature_points();
    for (std::size_t q = 0; q < y_q.size(); ++q) {
      integrand[q] = spec.region(points[q]) ? spec.integrand(y_q[q], yd_q[q]) : 0.0;
    }
  } else {
    fem.check(indicator.value);
    for (std::size_t q = 0; q < y_q.size(); ++q) {
      integrand[q] = indicator.value[q] * spec.integrand(y_q[q], yd_q[q]);
    }
  }
  return fem.integrate(integrand);
}

double GradientReport::directional_derivative(const FemSystem& fem, const NodalField& v) const {
  return fem.pair(dual, v);
}

GradientReport gradient_field(const FemSystem& fem, const StatePair& state, const AdjointPair& adjoint,
                              const CostSpec& spec, const IndicatorValues& indicator) {
  if (adjoint.kind != spec.kind) throw std::invalid_argument("gradient_field: adjoint solved for another cost");
  validate(spec, fem);
  const double inv_eps = 1.0 / state.epsilon;
  const QuadField y = fem.at_quadrature(state.y);
  const QuadField z = fem.at_quadrature(state.z);
  const QuadField p = fem.at_quadrature(adjoint.p);
  const QuadField q = fem.at_quadrature(adjoint.q);
  const QuadField yd = fem.at_quadrature(spec.target);
  const auto& dh = indicator.derivative;
  fem.check(dh);

  QuadField bracket(fem.mesh_id(), std::vector<double>(y.size()));
  const bool with_integrand = spec.weighted_by_domain();
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double coupling = inv_eps * (y[k] * p[k] + z[k] * q[k]);
    const double j = with_integrand ? spec.integrand(y[k], yd[k]) : 0.0;
    bracket[k] = dh[k] * (j + coupling);
  }
  GradientReport report;
  report.dual = fem.load(bracket);
  report.field = fem.project_l2(report.dual);
  report.bracket = std::move(bracket);
  return report;
}

DescentVariant descent_variant_from_name(std::string_view name) {
  if (name == "bracket") return DescentVariant::bracket;
  if (name == "saturated") return DescentVariant::saturated;
  if (name == "steepest") return DescentVariant::steepest;
  throw std::invalid_argument("unknown descent variant '" + std::string(name) + "'");
}

std::string_view to_string(DescentVariant variant) noexcept {
  switch (variant) {
    case DescentVariant::bracket: return "bracket";
    case DescentVariant::saturated: return "saturated";
    case DescentVariant::steepest: return "steepest";
  }
  return "?";
}

NodalField bracket_direction(const StatePair& state, const AdjointPair& adjoint, const CostSpec& spec) {
  const double inv_eps = 1.0 / state.epsilon;
  NodalField w(state.y.mesh_id(), std::vector<double>(state.y.size()));
  const bool with_integrand = spec.weighted_by_domain();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double j = with_integrand ? spec.integrand(state.y[i], spec.target[i]) : 0.0;
    w[i] = -(j + inv_eps * (state.y[i] * adjoint.p[i] + state.z[i] * adjoint.q[i]));
  }
  return w;
}

NodalField descent_direction(const FemSystem& fem, const StatePair& state, const AdjointPair& adjoint,
                             const CostSpec& spec, const IndicatorValues& indicator, DescentVariant variant) {
  switch (variant) {
    case DescentVariant::bracket: return bracket_direction(state, adjoint, spec);
    case DescentVariant::saturated: {
      NodalField d = bracket_direction(state, adjoint, spec);
      const double inv_eps = 1.0 / state.epsilon;
      for (auto& v : d.values()) v = saturate(v * inv_eps);
      return d;
    }
    case DescentVariant::steepest: {
      NodalField d = gradient_field(fem, state, adjoint, spec, indicator).field;
      d *= -1.0;
      return d;
    }
  }
  throw std::invalid_argument("descent_direction: unknown variant");
}

StationarityReport stationarity_check(const FemSystem& fem, const GradientReport& gradient,
                                      std::span<const NodalField> directions, const LevelSetParam* param) {
  StationarityReport report;
  double sq = 0.0;
  for (std::size_t k = 0; k < gradient.bracket.size(); ++k) {
    sq += fem.quadrature_weight(k) * gradient.bracket[k] * gradient.bracket[k];
  }
  report.gradient_norm = std::sqrt(sq);
  report.max_pairing = directions.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
  for (const auto& v : directions) {
    if (param && param->constrained()) {
      bool admissible = true;
      for (std::size_t i = 0; i < v.size() && admissible; ++i) {
        if (param->g[i] == 0.0 && v[i] < 0.0 && param->constraint(fem.mesh().vertex(i))) admissible = false;
      }
      if (!admissible) continue;
    }
    ++report.admissible;
    report.max_pairing = std::max(report.max_pairing, gradient.directional_derivative(fem, v));
  }
  if (report.admissible == 0) report.max_pairing = 0.0;
  return report;
}

}  // namespace plateopt
