#include <benchmark/benchmark.h>

#include <memory>

#include "plateopt/functional.hpp"

using namespace plateopt;

namespace {

struct Scene {
  explicit Scene(int n)
      : fem(TriMesh::build_structured(n)),
        profile(HeavisideKind::exponential, 1e-3),
        g(initial_g(fem.mesh(), ShapePreset::two_holes)),
        f(fem.mesh(), 1.0) {}
  FemSystem fem;
  HeavisideProfile profile;
  LevelSetParam g;
  NodalField f;
};

void BM_Assemble(benchmark::State& state) {
  const Scene s(static_cast<int>(state.range(0)));
  const QuadField weight = penalty_weight(indicator_at_quadrature(s.g, s.profile, s.fem), s.profile.epsilon());
  for (auto _ : state) benchmark::DoNotOptimize(s.fem.assemble(weight));
}

void BM_Factorize(benchmark::State& state) {
  const Scene s(static_cast<int>(state.range(0)));
  const SparseOperator op =
      s.fem.assemble(penalty_weight(indicator_at_quadrature(s.g, s.profile, s.fem), s.profile.epsilon()));
  LinearSolver solver;
  solver.factorize(op);  // symbolic analysis outside the loop
  for (auto _ : state) solver.factorize(op);
}

void BM_PcgSolve(benchmark::State& state) {
  const Scene s(static_cast<int>(state.range(0)));
  const SparseOperator op =
      s.fem.assemble(penalty_weight(indicator_at_quadrature(s.g, s.profile, s.fem), s.profile.epsilon()));
  const LoadVector b = s.fem.load(s.f);
  for (auto _ : state) benchmark::DoNotOptimize(solve(op, b, {SolverBackend::pcg, 1e-10, 100000}));
}

// One cost evaluation as done per line-search trial.
void BM_StateSolve(benchmark::State& state) {
  const Scene s(static_cast<int>(state.range(0)));
  PlateSolver solver(s.fem, s.profile);
  const CostSpec spec{CostKind::linear_omega, NodalField(s.fem.mesh(), 0.0), {}};
  for (auto _ : state) {
    solver.set_geometry(s.g);
    benchmark::DoNotOptimize(evaluate_cost(s.fem, solver.solve_state(s.f), spec, solver.indicator()));
  }
}

// State, adjoint and gradient at a fixed geometry.
void BM_Gradient(benchmark::State& state) {
  const Scene s(static_cast<int>(state.range(0)));
  PlateSolver solver(s.fem, s.profile);
  solver.set_geometry(s.g);
  const CostSpec spec{CostKind::linear_omega, NodalField(s.fem.mesh(), 0.0), {}};
  for (auto _ : state) {
    const StatePair st = solver.solve_state(s.f);
    const AdjointPair adj = solver.solve_adjoint(st, spec);
    benchmark::DoNotOptimize(gradient_field(s.fem, st, adj, spec, solver.indicator()));
  }
}

}  // namespace

BENCHMARK(BM_Assemble)->Arg(81)->Arg(161)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Factorize)->Arg(81)->Arg(161)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PcgSolve)->Arg(81)->Arg(161)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StateSolve)->Arg(81)->Arg(161)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gradient)->Arg(81)->Arg(161)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
