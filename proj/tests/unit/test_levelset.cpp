#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "plateopt/levelset.hpp"

using namespace plateopt;

namespace {

int closed_loops(const std::vector<Polyline>& contours) {
  int n = 0;
  for (const auto& p : contours) n += p.closed;
  return n;
}

}  // namespace

TEST(LevelSetPresets, ClosedForms) {
  EXPECT_DOUBLE_EQ(disk_level({0, 0}), 0.75);
  EXPECT_DOUBLE_EQ(disk_level({0.5, 0.5}), 0.25);
  EXPECT_DOUBLE_EQ(two_holes_level({0, 0}), -1.0 / 16);     // inside the central hole
  EXPECT_DOUBLE_EQ(two_holes_level({0.5, 0}), -1.0 / 64);   // inside the right hole
  EXPECT_GT(two_holes_level({-0.6, 0}), 0.0);               // in the material
  EXPECT_LT(two_holes_level({0.9, 0.9}), 0.0);              // outside the unit disk
  EXPECT_EQ(shape_preset_from_name("disk"), ShapePreset::disk);
  EXPECT_THROW((void)shape_preset_from_name("square"), std::invalid_argument);
}

TEST(LevelSetPresets, ExpressionAndPresetAgree) {
  const auto mesh = TriMesh::build_structured(15);
  const auto a = initial_g(*mesh, ShapePreset::disk);
  const auto b = initial_g(*mesh, Expression::parse("-x1^2-x2^2+3/4"));
  for (std::size_t i = 0; i < mesh->num_vertices(); ++i) EXPECT_NEAR(a.g[i], b.g[i], 1e-15);
  EXPECT_FALSE(a.constrained());
}

TEST(Contour, DiskIsOneClosedLoopOnTheCircle) {
  const auto mesh = TriMesh::build_structured(41);
  const auto g = initial_g(*mesh, ShapePreset::disk).g;
  const auto contours = extract_contour(*mesh, g);
  ASSERT_EQ(contours.size(), 1u);
  EXPECT_TRUE(contours[0].closed);
  const double r = std::sqrt(0.75);
  for (const auto& p : contours[0].points) EXPECT_NEAR(std::hypot(p.x1, p.x2), r, 2e-3);
  EXPECT_NEAR(positive_area(*mesh, g), std::numbers::pi * 0.75, 5e-3);
}

TEST(Contour, TwoHolesInitialDomainHasThreeBoundaries) {
  const auto mesh = TriMesh::build_structured(81);
  const auto contours = extract_contour(*mesh, initial_g(*mesh, ShapePreset::two_holes).g);
  EXPECT_EQ(contours.size(), 3u);
  EXPECT_EQ(closed_loops(contours), 3);
  const double area = std::numbers::pi * (1 - 1.0 / 16 - 1.0 / 64);
  EXPECT_NEAR(positive_area(*mesh, initial_g(*mesh, ShapePreset::two_holes).g), area, 1e-2);
}

TEST(Contour, EmptyAndFullDomains) {
  const auto mesh = TriMesh::build_structured(9);
  EXPECT_TRUE(extract_contour(*mesh, NodalField(*mesh, -1.0)).empty());
  EXPECT_TRUE(extract_contour(*mesh, NodalField(*mesh, 1.0)).empty());
  EXPECT_EQ(positive_area(*mesh, NodalField(*mesh, -1.0)), 0.0);
  EXPECT_NEAR(positive_area(*mesh, NodalField(*mesh, 1.0)), 4.0, 1e-13);
}

TEST(Contour, HalfPlaneAreaIsExact) {
  const auto mesh = TriMesh::build_structured(10);
  const auto g = NodalField::interpolate(*mesh, [](Point2 x) { return x.x1 - 0.123; });
  EXPECT_NEAR(positive_area(*mesh, g), 2.0 * (1 - 0.123), 1e-13);
  const auto contours = extract_contour(*mesh, g);
  ASSERT_EQ(contours.size(), 1u);
  EXPECT_FALSE(contours[0].closed);
  for (const auto& p : contours[0].points) EXPECT_NEAR(p.x1, 0.123, 1e-13);
}

TEST(Contour, ZeroAtVerticesChainsIntoLoops) {
  // The square |x1| + |x2| = 0.5 passes exactly through vertices of the grid.
  const auto mesh = TriMesh::build_structured(21);
  const auto g = NodalField::interpolate(*mesh, [](Point2 x) { return 0.5 - std::abs(x.x1) - std::abs(x.x2); });
  const auto contours = extract_contour(*mesh, g);
  ASSERT_EQ(contours.size(), 1u);
  EXPECT_TRUE(contours[0].closed);
  EXPECT_NEAR(positive_area(*mesh, g), 0.5, 1e-12);
}

TEST(Constraint, ProjectionLiftsNegativeValuesInside) {
  const auto mesh = TriMesh::build_structured(11);
  LevelSetParam p{NodalField(*mesh, -1.0), region_from_expression(Expression::parse("0.25 - x1^2 - x2^2"))};
  EXPECT_TRUE(p.constrained());
  const auto q = project_constraint(p, *mesh);
  for (std::size_t i = 0; i < mesh->num_vertices(); ++i) {
    const auto& x = mesh->vertex(i);
    EXPECT_EQ(q.g[i], x.x1 * x.x1 + x.x2 * x.x2 <= 0.25 ? 0.0 : -1.0);
  }
  const LevelSetParam free{NodalField(*mesh, -1.0), {}};
  EXPECT_EQ(project_constraint(free, *mesh).g.max_abs(), 1.0);
}

TEST(Indicator, ValuesInUnitIntervalAndDerivativePositive) {
  const FemSystem fem(TriMesh::build_structured(21));
  const auto param = initial_g(fem.mesh(), ShapePreset::two_holes);
  const auto ind = indicator_at_quadrature(param, HeavisideProfile(HeavisideKind::exponential, 1e-2), fem);
  ASSERT_EQ(ind.value.size(), fem.num_quadrature_points());
  const QuadField gq = fem.at_quadrature(param.g);
  for (std::size_t q = 0; q < ind.value.size(); ++q) {
    EXPECT_GE(ind.value[q], 0.0);
    EXPECT_LE(ind.value[q], 1.0);
    EXPECT_GT(ind.derivative[q], 0.0);
    EXPECT_EQ(ind.value[q] >= 0.5, gq[q] >= 0.0);
  }
}

TEST(Export, ContourCsvRepeatsFirstPointOfClosedLoops) {
  const auto mesh = TriMesh::build_structured(11);
  const auto contours = extract_contour(*mesh, initial_g(*mesh, ShapePreset::disk).g);
  std::ostringstream out;
  write_contour_csv(out, contours);
  std::istringstream in(out.str());
  std::string header, first, line, last;
  std::getline(in, header);
  EXPECT_EQ(header, "polyline_id,x1,x2");
  std::getline(in, first);
  std::size_t rows = 1;
  while (std::getline(in, line)) {
    last = line;
    ++rows;
  }
  EXPECT_EQ(first, last);
  EXPECT_EQ(rows, contours[0].points.size() + 1);
}

TEST(Export, SvgIsWellFormed) {
  const FemSystem fem(TriMesh::build_structured(11));
  const auto param = initial_g(fem.mesh(), ShapePreset::disk);
  const auto ind = indicator_at_quadrature(param, HeavisideProfile(HeavisideKind::exponential, 1e-3), fem);
  std::ostringstream out;
  write_domain_svg(out, fem, ind.value, extract_contour(fem.mesh(), param.g), 200);
  const std::string svg = out.str();
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("<polygon"), std::string::npos);
}
