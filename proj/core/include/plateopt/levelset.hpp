#pragma once

#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "plateopt/expression.hpp"
#include "plateopt/fem.hpp"
#include "plateopt/heaviside.hpp"

namespace plateopt {

/// Membership test for a subset of D.
using Region = std::function<bool(Point2)>;

/// Region {x : expr(x) >= 0}.
Region region_from_expression(Expression expr);

/// Level-set parametrization of the geometry: the domain is {g >= 0}, seen by
/// the solvers only through H^eps(g). When `constraint` is set, admissible
/// parametrizations satisfy g >= 0 at every vertex inside it.
struct LevelSetParam {
  NodalField g;
  Region constraint;

  [[nodiscard]] bool constrained() const noexcept { return static_cast<bool>(constraint); }
};

enum class ShapePreset { two_holes, disk };

ShapePreset shape_preset_from_name(std::string_view name);

/// Unit disk with two circular holes: min(r^2 - 1/16, |x - (0.5,0)|^2 - 1/64, 1 - r^2).
double two_holes_level(Point2 x);
/// Disk of radius sqrt(3)/2: 3/4 - r^2.
double disk_level(Point2 x);

LevelSetParam initial_g(const TriMesh& mesh, ShapePreset preset);
LevelSetParam initial_g(const TriMesh& mesh, const Expression& expression);

struct IndicatorValues {
  QuadField value;       // H^eps(g) at quadrature points
  QuadField derivative;  // (H^eps)'(g) at quadrature points
};

/// H^eps and its derivative evaluated at the P1 interpolant of g.
IndicatorValues indicator_at_quadrature(const LevelSetParam& param, const HeavisideProfile& profile,
                                        const FemSystem& fem);

/// g <- max(g, 0) at the vertices inside the constraint region.
LevelSetParam project_constraint(LevelSetParam param, const TriMesh& mesh);

struct Polyline {
  std::vector<Point2> points;
  bool closed = false;
};

/// Zero level set of the P1 field g by marching triangles. A vertex counts as
/// inside when g >= 0; segment end points are linear-interpolation roots on
/// mesh edges, chained into polylines.
std::vector<Polyline> extract_contour(const TriMesh& mesh, const NodalField& g);

/// Exact area of {g_h >= 0} for the P1 interpolant g_h.
double positive_area(const TriMesh& mesh, const NodalField& g);

/// CSV rows "polyline_id,x1,x2"; closed polylines repeat their first point.
void write_contour_csv(std::ostream& out, const std::vector<Polyline>& contours);

/// SVG picture of D: cells whose quadrature mean of H^eps(g) is at least 1/2
/// are filled, the zero contour is drawn on top.
void write_domain_svg(std::ostream& out, const FemSystem& fem, const QuadField& indicator,
                      const std::vector<Polyline>& contours, int pixels = 600);

}  // namespace plateopt
