#include <gtest/gtest.h>

#include <cmath>

#include "plateopt/fem.hpp"
#include "plateopt/linear_solver.hpp"

using namespace plateopt;

namespace {

struct Fixture {
  FemSystem fem{TriMesh::build_structured(25)};
  SparseOperator op = fem.assemble(fem.quad_from_function([](Point2 x) { return x.x1 > 0 ? 1e5 : 0.0; }));
  LoadVector b = fem.load(NodalField::interpolate(fem.mesh(), [](Point2 x) { return 1.0 + x.x2; }));
};

double residual(const SparseOperator& op, const NodalField& u, const LoadVector& b) {
  const LoadVector r = op.apply(u);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (op.layout().free_index[i] < 0) continue;
    num += (r.values[i] - b.values[i]) * (r.values[i] - b.values[i]);
    den += b.values[i] * b.values[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST(LinearSolver, CholeskyAndPcgAgree) {
  Fixture fx;
  const NodalField a = solve(fx.op, fx.b, {SolverBackend::cholesky});
  const NodalField c = solve(fx.op, fx.b, {SolverBackend::pcg, 1e-12, 100000});
  EXPECT_LT((a - c).max_abs(), 1e-8 * a.max_abs());
  EXPECT_LT(residual(fx.op, a, fx.b), 1e-10);
  EXPECT_LT(residual(fx.op, c, fx.b), 1e-10);
}

TEST(LinearSolver, BoundaryValuesAreZero) {
  Fixture fx;
  const NodalField u = solve(fx.op, fx.b);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (fx.fem.mesh().on_boundary(i)) {
      EXPECT_EQ(u[i], 0.0);
    }
  }
}

TEST(LinearSolver, RefactorizationReusesPattern) {
  Fixture fx;
  LinearSolver solver;
  solver.factorize(fx.op);
  const NodalField first = solver.solve(fx.b);
  const SparseOperator other = fx.fem.assemble(fx.fem.constant_quad(2.0));
  solver.factorize(other);
  const NodalField second = solver.solve(fx.b);
  EXPECT_LT(residual(other, second, fx.b), 1e-10);
  EXPECT_GT((first - second).max_abs(), 0.0);
  EXPECT_LT(solver.last_stats().relative_residual, 1e-10);
}

TEST(LinearSolver, PcgReportsNonConvergence) {
  Fixture fx;
  try {
    (void)solve(fx.op, fx.b, {SolverBackend::pcg, 1e-12, 3});
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_GT(e.residual(), 1e-12);
    EXPECT_EQ(e.iterations(), 3);
  }
}

TEST(LinearSolver, ZeroRightHandSide) {
  Fixture fx;
  LoadVector zero{std::vector<double>(fx.b.values.size(), 0.0), fx.b.mesh_id};
  EXPECT_EQ(solve(fx.op, zero).max_abs(), 0.0);
  EXPECT_EQ(solve(fx.op, zero, {SolverBackend::pcg}).max_abs(), 0.0);
}

TEST(LinearSolver, BackendNames) {
  EXPECT_EQ(solver_backend_from_name("pcg"), SolverBackend::pcg);
  EXPECT_EQ(to_string(SolverBackend::cholesky), "cholesky");
  EXPECT_THROW((void)solver_backend_from_name("lu"), std::invalid_argument);
}
