#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "plateopt/fem.hpp"
#include "plateopt/linear_solver.hpp"

using namespace plateopt;

namespace {

FemSystem make(int n) { return FemSystem(TriMesh::build_structured(n)); }

}  // namespace

TEST(FemSystem, QuadratureIsExactForQuadratics) {
  const FemSystem fem = make(7);
  EXPECT_NEAR(fem.integrate(fem.constant_quad(1.0)), 4.0, 1e-13);
  EXPECT_NEAR(fem.integrate(fem.quad_from_function([](Point2 x) { return x.x1 * x.x1; })), 4.0 / 3.0, 1e-13);
  EXPECT_NEAR(fem.integrate(fem.quad_from_function([](Point2 x) { return x.x1 * x.x2 + x.x2; })), 0.0, 1e-13);
  EXPECT_NEAR(fem.integrate(fem.quad_from_function([](Point2 x) { return (1 + x.x1) * (1 + x.x2); })), 4.0, 1e-13);
}

TEST(FemSystem, QuadraturePointsAreEdgeMidpoints) {
  const FemSystem fem = make(4);
  const auto& mesh = fem.mesh();
  const auto pts = fem.quadrature_points();
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    for (int k = 0; k < 3; ++k) {
      const Point2 a = mesh.vertex(tri[k]), b = mesh.vertex(tri[(k + 1) % 3]);
      EXPECT_DOUBLE_EQ(pts[3 * t + k].x1, 0.5 * (a.x1 + b.x1));
      EXPECT_DOUBLE_EQ(pts[3 * t + k].x2, 0.5 * (a.x2 + b.x2));
    }
  }
}

TEST(FemSystem, AtQuadratureReproducesLinearFields) {
  const FemSystem fem = make(6);
  const NodalField u = NodalField::interpolate(fem.mesh(), [](Point2 x) { return 2 * x.x1 - x.x2 + 0.5; });
  const QuadField uq = fem.at_quadrature(u);
  const auto pts = fem.quadrature_points();
  for (std::size_t q = 0; q < uq.size(); ++q) EXPECT_NEAR(uq[q], 2 * pts[q].x1 - pts[q].x2 + 0.5, 1e-14);
}

TEST(FemSystem, LoadOfConstantSumsToArea) {
  const FemSystem fem = make(9);
  const LoadVector b = fem.load(NodalField(fem.mesh(), 1.0));
  double sum = 0.0;
  for (double v : b.values) sum += v;
  EXPECT_NEAR(sum, 4.0, 1e-13);
  EXPECT_NEAR(fem.pair(b, NodalField(fem.mesh(), 2.0)), 8.0, 1e-13);
}

TEST(FemSystem, MassMatrixIntegratesProducts) {
  const FemSystem fem = make(8);
  const NodalField u = NodalField::interpolate(fem.mesh(), [](Point2 x) { return x.x1 + 2.0; });
  const NodalField v = NodalField::interpolate(fem.mesh(), [](Point2 x) { return x.x2 - x.x1; });
  // Products of linears are quadratics, so both routes are exact.
  const double reference = oracle::integrate_p1(fem.mesh(), u, [](Point2 x, double uh) { return uh * (x.x2 - x.x1); });
  EXPECT_NEAR(fem.integrate({u, v}), reference, 1e-13);
  EXPECT_NEAR(fem.pair(fem.load(u), v), reference, 1e-13);
}

TEST(FemSystem, StiffnessAnnihilatesLinearsOnInteriorRows) {
  const FemSystem fem = make(7);
  const NodalField u = NodalField::interpolate(fem.mesh(), [](Point2 x) { return 3 * x.x1 - x.x2; });
  const SparseOperator k = fem.assemble(fem.constant_quad(0.0));
  std::vector<double> x(fem.layout().num_free()), y(x.size());
  for (int d = 0; d < fem.layout().num_free(); ++d) x[d] = u[fem.layout().free_vertex[d]];
  k.multiply(x, y);
  // Rows whose neighbours are all free see the full stencil, which sums a linear to zero.
  const int n = 7;
  for (int d = 0; d < fem.layout().num_free(); ++d) {
    const int v = fem.layout().free_vertex[d];
    const int i = v % n, j = v / n;
    if (i >= 2 && i <= n - 3 && j >= 2 && j <= n - 3) {
      EXPECT_NEAR(y[d], 0.0, 1e-12);
    }
  }
}

TEST(FemSystem, OperatorIsSymmetricWithPositiveDiagonal) {
  const FemSystem fem = make(10);
  const SparseOperator op = fem.assemble(fem.quad_from_function([](Point2 x) { return 1e3 * (1 + x.x1 * x.x1); }));
  EXPECT_LT(op.asymmetry(), 1e-15);
  for (int r = 0; r < op.pattern().rows(); ++r) EXPECT_GT(op.diagonal(r), 0.0);
  EXPECT_EQ(op.pattern().rows(), 8 * 8);
}

TEST(FemSystem, DirichletEnergyOfLinear) {
  const FemSystem fem = make(5);
  const NodalField u = NodalField::interpolate(fem.mesh(), [](Point2 x) { return 3 * x.x1 + 4 * x.x2; });
  EXPECT_NEAR(fem.dirichlet_energy(u), 25.0 * 4.0, 1e-11);
}

TEST(FemSystem, ProjectionIsIdentityOnP1) {
  const FemSystem fem = make(11);
  const NodalField u = NodalField::interpolate(fem.mesh(), [](Point2 x) { return std::sin(x.x1) * std::cos(2 * x.x2); });
  const NodalField back = fem.project_l2(fem.load(u));
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(back[i], u[i], 1e-11);
}

TEST(FemSystem, RejectsInvalidWeights) {
  const FemSystem fem = make(4);
  EXPECT_THROW((void)fem.assemble(fem.constant_quad(-1.0)), std::invalid_argument);
  EXPECT_THROW((void)fem.assemble(fem.constant_quad(NAN)), std::invalid_argument);
}

TEST(FemSystem, RejectsFieldsFromOtherMeshes) {
  const FemSystem a = make(4), b = make(4);
  const NodalField u(b.mesh(), 1.0);
  EXPECT_THROW((void)a.load(u), MeshMismatch);
  EXPECT_THROW((void)a.at_quadrature(u), MeshMismatch);
  NodalField v(a.mesh(), 1.0);
  EXPECT_THROW(v += u, MeshMismatch);
}

TEST(NodalField, Arithmetic) {
  const auto mesh = TriMesh::build_structured(3);
  NodalField a(*mesh, 1.0), b(*mesh, 2.0);
  const NodalField c = a + 3.0 * b;
  EXPECT_DOUBLE_EQ(c[4], 7.0);
  a.axpy(-0.5, b);
  EXPECT_DOUBLE_EQ(a[0], 0.0);
  EXPECT_DOUBLE_EQ((b - c).max_abs(), 5.0);
  EXPECT_TRUE(c.all_finite());
  b[2] = INFINITY;
  EXPECT_FALSE(b.all_finite());
}

// -Delta u = lambda u_exact on D with the first Dirichlet mode; errors measured
// with the independent degree-4 rule.
TEST(FemSystem, ManufacturedPoissonConvergesAtSecondOrder) {
  auto mode = [](Point2 x) {
    return std::sin(std::numbers::pi * (x.x1 + 1) / 2) * std::sin(std::numbers::pi * (x.x2 + 1) / 2);
  };
  const double lambda = std::numbers::pi * std::numbers::pi / 2;
  std::vector<double> errors;
  for (int n : {11, 21, 41}) {
    const FemSystem fem = make(n);
    const NodalField f = NodalField::interpolate(fem.mesh(), [&](Point2 x) { return lambda * mode(x); });
    const NodalField u = solve(fem.assemble(fem.constant_quad(0.0)), fem.load(f));
    errors.push_back(oracle::l2_error(fem.mesh(), u, mode));
  }
  for (std::size_t k = 1; k < errors.size(); ++k) {
    const double rate = std::log2(errors[k - 1] / errors[k]);
    EXPECT_GT(rate, 1.8);
    EXPECT_LT(rate, 2.2);
  }
}
