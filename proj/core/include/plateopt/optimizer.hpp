#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "plateopt/functional.hpp"

namespace plateopt {

enum class StopKind {
  abs_cost,      // |j(g_n)| < tol
  rel_decrease,  // j(g_{n+1}) > j(g_n) - tol
  grad_norm,     // ||B||_{L2} < tol
};

StopKind stop_kind_from_name(std::string_view name);
std::string_view to_string(StopKind kind) noexcept;

struct LineSearchConfig {
  double initial_step = 1.0;
  double shrink = 0.5;
  double expand = 2.0;
  int max_trials = 25;
  /// A trial counts as improving only if it beats the best cost so far by
  /// more than this. Stops the expansion from chasing vanishing gains.
  double min_decrease = 0.0;
};

struct StopConfig {
  StopKind kind = StopKind::abs_cost;
  double tol = 1e-10;
  int max_iters = 50;
};

struct OptConfig {
  double epsilon = 1e-5;
  HeavisideKind profile = HeavisideKind::exponential;
  CostSpec cost;
  DescentVariant direction = DescentVariant::saturated;
  LineSearchConfig line_search;
  StopConfig stop;
  SolverOptions solver;
  /// Worker count for concurrent line-search trials. Results do not depend on it.
  unsigned threads = 1;

  /// Throws std::invalid_argument describing the first invalid field.
  void validate() const;
};

struct Trial {
  double step = 0.0;
  double cost = 0.0;
};

struct LineSearchResult {
  bool success = false;
  double step = 0.0;
  double cost = 0.0;
  std::vector<Trial> trials;
};

/// Evaluates the cost for a batch of step lengths; entries are independent.
using BatchEvaluator = std::function<std::vector<double>(std::span<const double> steps)>;

/// Geometric trial schedule. Starting at the initial step, expand while the
/// cost keeps improving; if the initial step does not improve on `current`,
/// shrink until a trial does and keep shrinking while it still improves. The
/// best improving trial is returned. Trials are generated in batches of
/// `batch` but consumed strictly in schedule order, so the log and the result
/// do not depend on the batch size.
LineSearchResult line_search(double current, const BatchEvaluator& evaluate, const LineSearchConfig& config,
                             std::size_t batch = 1);
LineSearchResult line_search(double current, const std::function<double(double)>& evaluate,
                             const LineSearchConfig& config);

enum class StopReason { none, abs_cost, rel_decrease, grad_norm, stationary, no_descent_step, max_iters };

std::string_view to_string(StopReason reason) noexcept;

struct Iterate {
  int n = 0;
  double cost = 0.0;
  double direction_norm = 0.0;  // L2 norm of the direction taken from this iterate
  double descent_value = 0.0;   // directional derivative along it
  double step = 0.0;            // accepted step, 0 if none was taken
  std::vector<Trial> trials;
  NodalField g;
};

struct OptRun {
  std::vector<Iterate> iterates;
  StopReason stop_reason = StopReason::none;

  [[nodiscard]] const Iterate& final_iterate() const { return iterates.back(); }
  [[nodiscard]] double final_cost() const { return iterates.back().cost; }
  [[nodiscard]] std::vector<double> cost_history() const;
};

/// Snapshot handed to observers once per iterate, after the direction (if
/// any) is known and before the line search runs.
struct IterateView {
  int n;
  double cost;
  const LevelSetParam& param;
  const StatePair& state;
  const IndicatorValues& indicator;
  const AdjointPair* adjoint;   // null on the terminal iterate
  const NodalField* direction;  // null on the terminal iterate
};

using IterateObserver = std::function<void(const IterateView&)>;

class OptimizerError : public std::runtime_error {
 public:
  OptimizerError(int iteration, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what), iteration_(iteration) {}
  [[nodiscard]] int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

/// Projected-gradient loop: state, adjoint, gradient, direction, line search
/// g + lambda d, projection onto the constraint (when g0 carries one), stop test.
OptRun run(const FemSystem& fem, const OptConfig& config, const LevelSetParam& g0, const NodalField& f,
           const IterateObserver& observer = {});

}  // namespace plateopt
