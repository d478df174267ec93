#include "plateopt/plate_solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace plateopt {

CostKind cost_kind_from_name(std::string_view name) {
  if (name == "tracking_E") return CostKind::tracking_E;
  if (name == "quadratic_omega") return CostKind::quadratic_omega;
  if (name == "linear_omega") return CostKind::linear_omega;
  throw std::invalid_argument("unknown cost kind '" + std::string(name) + "'");
}

std::string_view to_string(CostKind kind) noexcept {
  switch (kind) {
    case CostKind::tracking_E: return "tracking_E";
    case CostKind::quadratic_omega: return "quadratic_omega";
    case CostKind::linear_omega: return "linear_omega";
  }
  return "?";
}

void validate(const CostSpec& spec, const FemSystem& fem) {
  fem.check(spec.target);
  if (spec.kind == CostKind::tracking_E && !spec.region) {
    throw std::invalid_argument("tracking_E cost needs an observation region E");
  }
}

QuadField penalty_weight(const IndicatorValues& indicator, double epsilon) {
  QuadField w(indicator.value.mesh_id(), std::vector<double>(indicator.value.size()));
  for (std::size_t q = 0; q < w.size(); ++q) w[q] = std::max(0.0, (1.0 - indicator.value[q]) / epsilon);
  return w;
}

PlateSolver::PlateSolver(const FemSystem& fem, HeavisideProfile profile, SolverOptions options)
    : fem_(&fem), profile_(profile), solver_(options) {}

void PlateSolver::set_geometry(const LevelSetParam& param) {
  fem_->check(param.g);
  param_ = param;
  indicator_ = indicator_at_quadrature(param, profile_, *fem_);
  op_ = fem_->assemble(penalty_weight(*indicator_, profile_.epsilon()));
  solver_.factorize(*op_);
}

const IndicatorValues& PlateSolver::indicator() const {
  if (!indicator_) throw std::logic_error("PlateSolver: geometry not set");
  return *indicator_;
}

const LevelSetParam& PlateSolver::geometry() const {
  if (!param_) throw std::logic_error("PlateSolver: geometry not set");
  return *param_;
}

const SparseOperator& PlateSolver::op() const {
  if (!op_) throw std::logic_error("PlateSolver: geometry not set");
  return *op_;
}

StatePair PlateSolver::solve_state(const NodalField& f) const {
  const auto& param = geometry();
  fem_->check(f);
  NodalField z = solver_.solve(fem_->load(f));
  NodalField y = solver_.solve(fem_->load(z));
  return {std::move(y), std::move(z), profile_.epsilon(), param.g};
}

namespace {

void require_consistent(const StatePair& state, const PlateSolver& solver) {
  const auto& g = solver.geometry().g;
  if (state.epsilon != solver.profile().epsilon() || state.g.mesh_id() != g.mesh_id() ||
      !std::equal(g.values().begin(), g.values().end(), state.g.values().begin(), state.g.values().end())) {
    throw std::invalid_argument("state was computed for a different geometry or epsilon");
  }
}

}  // namespace

LoadVector PlateSolver::adjoint_load(const StatePair& state, const CostSpec& spec) const {
  require_consistent(state, *this);
  validate(spec, *fem_);
  const QuadField y_q = fem_->at_quadrature(state.y);
  const QuadField yd_q = fem_->at_quadrature(spec.target);
  QuadField density(fem_->mesh_id(), std::vector<double>(y_q.size()));
  if (spec.kind == CostKind::tracking_E) {
    const auto points = fem_->quadrature_points();
    for (std::size_t q = 0; q < density.size(); ++q) {
      density[q] = spec.region(points[q]) ? y_q[q] - yd_q[q] : 0.0;
    }
  } else {
    const auto& h = indicator().value;
    for (std::size_t q = 0; q < density.size(); ++q) {
      density[q] = h[q] * spec.integrand_derivative(y_q[q], yd_q[q]);
    }
  }
  return fem_->load(density);
}

AdjointPair PlateSolver::solve_adjoint(const StatePair& state, const CostSpec& spec) const {
  NodalField p = solver_.solve(adjoint_load(state, spec));
  NodalField q = solver_.solve(fem_->load(p));
  return {std::move(p), std::move(q), spec.kind};
}

Variation PlateSolver::solve_variation(const StatePair& state, const NodalField& v) const {
  require_consistent(state, *this);
  fem_->check(v);
  const double inv_eps = 1.0 / profile_.epsilon();
  const auto& dh = indicator().derivative;
  const QuadField v_q = fem_->at_quadrature(v);
  const QuadField z_q = fem_->at_quadrature(state.z);
  const QuadField y_q = fem_->at_quadrature(state.y);

  QuadField rhs_u(fem_->mesh_id(), std::vector<double>(v_q.size()));
  for (std::size_t q = 0; q < v_q.size(); ++q) rhs_u[q] = inv_eps * dh[q] * z_q[q] * v_q[q];
  NodalField u = solver_.solve(fem_->load(rhs_u));

  const QuadField u_q = fem_->at_quadrature(u);
  QuadField rhs_w(fem_->mesh_id(), std::vector<double>(v_q.size()));
  for (std::size_t q = 0; q < v_q.size(); ++q) rhs_w[q] = u_q[q] + inv_eps * dh[q] * y_q[q] * v_q[q];
  NodalField w = solver_.solve(fem_->load(rhs_w));
  return {std::move(u), std::move(w)};
}

StatePair solve_state(const FemSystem& fem, const LevelSetParam& param, const HeavisideProfile& profile,
                      const NodalField& f, SolverOptions options) {
  PlateSolver solver(fem, profile, options);
  solver.set_geometry(param);
  return solver.solve_state(f);
}

}  // namespace plateopt
