#pragma once

// Test-side reference computations. They use their own quadrature and
// interpolation so that they do not share code paths with the library.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "plateopt/fem.hpp"

namespace plateopt::oracle {

/// Degree-4 symmetric rule on the reference triangle (6 points, weights sum to 1).
struct TrianglePoint {
  double l0, l1, l2, weight;
};

inline const std::array<TrianglePoint, 6>& degree4_rule() {
  static const std::array<TrianglePoint, 6> rule = [] {
    const double a1 = 0.445948490915965, w1 = 0.223381589678011;
    const double a2 = 0.091576213509771, w2 = 0.109951743655322;
    return std::array<TrianglePoint, 6>{{{1 - 2 * a1, a1, a1, w1},
                                         {a1, 1 - 2 * a1, a1, w1},
                                         {a1, a1, 1 - 2 * a1, w1},
                                         {1 - 2 * a2, a2, a2, w2},
                                         {a2, 1 - 2 * a2, a2, w2},
                                         {a2, a2, 1 - 2 * a2, w2}}};
  }();
  return rule;
}

/// \int_D F(x, u_h(x)) with u_h the P1 interpolant of the nodal values,
/// evaluated by the degree-4 rule on every triangle.
inline double integrate_p1(const TriMesh& mesh, const NodalField& u,
                           const std::function<double(Point2, double)>& integrand) {
  double total = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const Point2 a = mesh.vertex(tri[0]), b = mesh.vertex(tri[1]), c = mesh.vertex(tri[2]);
    const double area = 0.5 * std::abs((b.x1 - a.x1) * (c.x2 - a.x2) - (c.x1 - a.x1) * (b.x2 - a.x2));
    for (const auto& q : degree4_rule()) {
      const Point2 x{q.l0 * a.x1 + q.l1 * b.x1 + q.l2 * c.x1, q.l0 * a.x2 + q.l1 * b.x2 + q.l2 * c.x2};
      const double value = q.l0 * u[tri[0]] + q.l1 * u[tri[1]] + q.l2 * u[tri[2]];
      total += area * q.weight * integrand(x, value);
    }
  }
  return total;
}

inline double l2_error(const TriMesh& mesh, const NodalField& u, const std::function<double(Point2)>& exact) {
  return std::sqrt(integrate_p1(mesh, u, [&](Point2 x, double v) {
    const double d = v - exact(x);
    return d * d;
  }));
}

/// Nodal value closest to a point (structured meshes place a vertex at the origin for odd n).
inline double value_near(const TriMesh& mesh, const NodalField& u, Point2 p) {
  std::size_t best = 0;
  double dist = INFINITY;
  for (std::size_t i = 0; i < mesh.num_vertices(); ++i) {
    const double d = std::hypot(mesh.vertex(i).x1 - p.x1, mesh.vertex(i).x2 - p.x2);
    if (d < dist) {
      dist = d;
      best = i;
    }
  }
  return u[best];
}

/// Smooth random field: c + sum_k a_k cos(k1 pi x1 / 2 + phi) cos(k2 pi x2 / 2 + psi).
class SmoothFieldGenerator {
 public:
  explicit SmoothFieldGenerator(std::uint64_t seed) : rng_(seed) {}

  NodalField field(const TriMesh& mesh, double offset, double amplitude, int modes = 4) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> freq(1, 3);
    struct Mode {
      double a, phi, psi;
      int k1, k2;
    };
    std::vector<Mode> terms;
    for (int m = 0; m < modes; ++m) {
      terms.push_back({amplitude * unit(rng_), std::numbers::pi * unit(rng_), std::numbers::pi * unit(rng_),
                       freq(rng_), freq(rng_)});
    }
    return NodalField::interpolate(mesh, [&](Point2 x) {
      double v = offset;
      for (const auto& t : terms) {
        v += t.a * std::cos(t.k1 * std::numbers::pi * x.x1 / 2 + t.phi) *
             std::cos(t.k2 * std::numbers::pi * x.x2 / 2 + t.psi);
      }
      return v;
    });
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace plateopt::oracle
