#include "plateopt/optimizer.hpp"

#include <cmath>
#include <future>
#include <memory>

namespace plateopt {

StopKind stop_kind_from_name(std::string_view name) {
  if (name == "abs_cost") return StopKind::abs_cost;
  if (name == "rel_decrease") return StopKind::rel_decrease;
  if (name == "grad_norm") return StopKind::grad_norm;
  throw std::invalid_argument("unknown stop test '" + std::string(name) + "'");
}

std::string_view to_string(StopKind kind) noexcept {
  switch (kind) {
    case StopKind::abs_cost: return "abs_cost";
    case StopKind::rel_decrease: return "rel_decrease";
    case StopKind::grad_norm: return "grad_norm";
  }
  return "?";
}

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::none: return "none";
    case StopReason::abs_cost: return "abs_cost";
    case StopReason::rel_decrease: return "rel_decrease";
    case StopReason::grad_norm: return "grad_norm";
    case StopReason::stationary: return "stationary";
    case StopReason::no_descent_step: return "no_descent_step";
    case StopReason::max_iters: return "max_iters";
  }
  return "?";
}

void OptConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(line_search.initial_step > 0.0)) throw std::invalid_argument("initial step must be positive");
  if (!(line_search.shrink > 0.0 && line_search.shrink < 1.0)) throw std::invalid_argument("shrink must lie in (0,1)");
  if (!(line_search.expand > 1.0)) throw std::invalid_argument("expand must exceed 1");
  if (line_search.max_trials < 1) throw std::invalid_argument("max trials must be at least 1");
  if (!(line_search.min_decrease >= 0.0)) throw std::invalid_argument("min decrease must be nonnegative");
  if (!(stop.tol > 0.0)) throw std::invalid_argument("stop tolerance must be positive");
  if (stop.max_iters < 0) throw std::invalid_argument("max iterations must be nonnegative");
  if (cost.kind == CostKind::tracking_E && !cost.region) throw std::invalid_argument("tracking_E needs a region");
}

std::vector<double> OptRun::cost_history() const {
  std::vector<double> out;
  out.reserve(iterates.size());
  for (const auto& it : iterates) out.push_back(it.cost);
  return out;
}

// ---------------------------------------------------------------- line search

LineSearchResult line_search(double current, const BatchEvaluator& evaluate, const LineSearchConfig& config,
                             std::size_t batch) {
  batch = std::max<std::size_t>(batch, 1);
  LineSearchResult result;
  result.cost = current;
  const auto budget = static_cast<std::size_t>(config.max_trials);

  // Runs one geometric phase steps = first * factor^k. Before any success the
  // phase continues while `keep_searching`; after a success it continues only
  // while trials keep improving. Returns once the phase is over.
  auto phase = [&](double first, double factor, bool keep_searching) {
    double next = first;
    for (;;) {
      const std::size_t room = budget - result.trials.size();
      if (room == 0) return;
      std::vector<double> steps;
      for (std::size_t k = 0; k < std::min(batch, room); ++k) {
        steps.push_back(next);
        next *= factor;
      }
      const auto costs = evaluate(steps);
      for (std::size_t k = 0; k < steps.size(); ++k) {
        result.trials.push_back({steps[k], costs[k]});
        const bool improves = std::isfinite(costs[k]) && costs[k] < result.cost - config.min_decrease;
        if (improves) {
          result.success = true;
          result.step = steps[k];
          result.cost = costs[k];
        } else if (result.success || !keep_searching) {
          return;
        }
      }
    }
  };

  phase(config.initial_step, config.expand, false);
  if (!result.success) phase(config.initial_step * config.shrink, config.shrink, true);
  if (!result.success) result.cost = current;
  return result;
}

LineSearchResult line_search(double current, const std::function<double(double)>& evaluate,
                             const LineSearchConfig& config) {
  return line_search(
      current,
      [&](std::span<const double> steps) {
        std::vector<double> out;
        out.reserve(steps.size());
        for (double s : steps) out.push_back(evaluate(s));
        return out;
      },
      config, 1);
}

// ------------------------------------------------------------------ optimizer

namespace {

LevelSetParam step_from(const LevelSetParam& base, const NodalField& direction, double step, const TriMesh& mesh) {
  LevelSetParam next = base;
  next.g.axpy(step, direction);
  return project_constraint(std::move(next), mesh);
}

}  // namespace

OptRun run(const FemSystem& fem, const OptConfig& config, const LevelSetParam& g0, const NodalField& f,
           const IterateObserver& observer) {
  config.validate();
  validate(config.cost, fem);
  fem.check(g0.g);
  fem.check(f);

  const HeavisideProfile profile(config.profile, config.epsilon);
  const unsigned workers = std::max(1u, config.threads);
  std::vector<std::unique_ptr<PlateSolver>> trial_solvers;
  for (unsigned k = 0; k < workers; ++k) {
    trial_solvers.push_back(std::make_unique<PlateSolver>(fem, profile, config.solver));
  }
  PlateSolver solver(fem, profile, config.solver);

  auto trial_cost = [&](PlateSolver& worker, const LevelSetParam& param) {
    worker.set_geometry(param);
    const StatePair state = worker.solve_state(f);
    return evaluate_cost(fem, state, config.cost, worker.indicator());
  };

  OptRun result;
  LevelSetParam param = g0;
  bool terminal = false;
  for (int n = 0;; ++n) {
    try {
      solver.set_geometry(param);
      const StatePair state = solver.solve_state(f);
      const double cost = evaluate_cost(fem, state, config.cost, solver.indicator());

      Iterate record;
      record.n = n;
      record.cost = cost;
      record.g = param.g;

      auto finish = [&](StopReason reason) {
        if (observer) observer({n, cost, param, state, solver.indicator(), nullptr, nullptr});
        result.iterates.push_back(std::move(record));
        result.stop_reason = reason;
      };

      if (terminal) {
        finish(StopReason::rel_decrease);
        return result;
      }
      if (config.stop.kind == StopKind::abs_cost && std::abs(cost) < config.stop.tol) {
        finish(StopReason::abs_cost);
        return result;
      }
      if (n >= config.stop.max_iters) {
        finish(StopReason::max_iters);
        return result;
      }

      const AdjointPair adjoint = solver.solve_adjoint(state, config.cost);
      const GradientReport gradient = gradient_field(fem, state, adjoint, config.cost, solver.indicator());
      const NodalField direction =
          descent_direction(fem, state, adjoint, config.cost, solver.indicator(), config.direction);
      record.direction_norm = fem.l2_norm(direction);
      record.descent_value = gradient.directional_derivative(fem, direction);

      if (config.stop.kind == StopKind::grad_norm) {
        const auto report = stationarity_check(fem, gradient, {});
        if (report.gradient_norm < config.stop.tol) {
          finish(StopReason::grad_norm);
          return result;
        }
      }
      if (direction.max_abs() == 0.0) {
        finish(StopReason::stationary);
        return result;
      }

      if (observer) observer({n, cost, param, state, solver.indicator(), &adjoint, &direction});

      const BatchEvaluator evaluate = [&](std::span<const double> steps) {
        std::vector<double> costs(steps.size());
        if (steps.size() == 1 || workers == 1) {
          for (std::size_t k = 0; k < steps.size(); ++k) {
            costs[k] = trial_cost(*trial_solvers[0], step_from(param, direction, steps[k], fem.mesh()));
          }
          return costs;
        }
        std::vector<std::future<double>> pending;
        for (std::size_t k = 0; k < steps.size(); ++k) {
          pending.push_back(std::async(std::launch::async, [&, k] {
            return trial_cost(*trial_solvers[k], step_from(param, direction, steps[k], fem.mesh()));
          }));
        }
        for (std::size_t k = 0; k < steps.size(); ++k) costs[k] = pending[k].get();
        return costs;
      };
      LineSearchResult search = line_search(cost, evaluate, config.line_search, workers);
      record.trials = std::move(search.trials);

      if (!search.success) {
        finish(config.stop.kind == StopKind::rel_decrease ? StopReason::rel_decrease : StopReason::no_descent_step);
        return result;
      }
      record.step = search.step;
      result.iterates.push_back(std::move(record));
      param = step_from(param, direction, search.step, fem.mesh());
      if (config.stop.kind == StopKind::rel_decrease && search.cost > cost - config.stop.tol) terminal = true;
    } catch (const OptimizerError&) {
      throw;
    } catch (const std::exception& e) {
      throw OptimizerError(n, e.what());
    }
  }
}

}  // namespace plateopt
