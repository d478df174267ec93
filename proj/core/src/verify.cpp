#include "plateopt/verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

namespace plateopt::verify {

double RadialOracle::bilaplacian_residual(double h, int samples) const {
  auto laplacian = [h](const auto& u) {
    return [h, u](double r) {
      const double up = u(r + h), u0 = u(r), um = u(r - h);
      return (up - 2.0 * u0 + um) / (h * h) + (up - um) / (2.0 * h * r);
    };
  };
  const auto y_fn = [this](double r) { return y(r); };
  const auto lap_y = laplacian(y_fn);
  const auto bilap_y = laplacian(lap_y);
  double worst = 0.0;
  for (int k = 1; k <= samples; ++k) {
    const double r = radius * (0.1 + 0.8 * k / samples);
    worst = std::max(worst, std::abs(bilap_y(r) - load));
  }
  return worst / std::abs(load);
}

double manufactured_mode(Point2 x) {
  return std::sin(std::numbers::pi * (x.x1 + 1.0) / 2.0) * std::sin(std::numbers::pi * (x.x2 + 1.0) / 2.0);
}

std::vector<PoissonRow> manufactured_poisson_study(std::span<const int> sizes, SolverOptions options) {
  std::vector<PoissonRow> rows;
  for (int n : sizes) {
    FemSystem fem(TriMesh::build_structured(n));
    const NodalField source =
        NodalField::interpolate(fem.mesh(), [](Point2 x) { return kManufacturedEigenvalue * manufactured_mode(x); });
    const SparseOperator op = fem.assemble(fem.constant_quad(0.0));
    const NodalField u = solve(op, fem.load(source), options);
    const QuadField u_h = fem.at_quadrature(u);
    const QuadField exact = fem.quad_from_function(manufactured_mode);
    QuadField err(fem.mesh_id(), std::vector<double>(u_h.size()));
    for (std::size_t q = 0; q < err.size(); ++q) err[q] = (u_h[q] - exact[q]) * (u_h[q] - exact[q]);

    PoissonRow row;
    row.n = n;
    row.h = mesh_statistics(fem.mesh()).h_max;
    row.l2_error = std::sqrt(fem.integrate(err));
    if (!rows.empty()) row.rate = std::log(rows.back().l2_error / row.l2_error) / std::log(rows.back().h / row.h);
    rows.push_back(row);
  }
  return rows;
}

std::vector<EpsilonRow> convergence_study_epsilon(const FemSystem& fem, const RadialOracle& oracle,
                                                  std::span<const double> epsilons, HeavisideKind kind) {
  const LevelSetParam disk{NodalField::interpolate(fem.mesh(), [&](Point2 x) { return oracle.level(x); }), {}};
  const NodalField f(fem.mesh(), oracle.load);
  const auto points = fem.quadrature_points();

  QuadField inside(fem.mesh_id(), std::vector<double>(points.size()));
  QuadField exact(fem.mesh_id(), std::vector<double>(points.size()));
  for (std::size_t q = 0; q < points.size(); ++q) {
    const double r = std::hypot(points[q].x1, points[q].x2);
    inside[q] = r < oracle.radius ? 1.0 : 0.0;
    exact[q] = oracle.y(r);
  }

  std::size_t center = 0;
  for (std::size_t i = 1; i < fem.mesh().num_vertices(); ++i) {
    const auto& p = fem.mesh().vertex(i);
    const auto& c = fem.mesh().vertex(center);
    if (std::hypot(p.x1, p.x2) < std::hypot(c.x1, c.x2)) center = i;
  }

  std::vector<EpsilonRow> rows;
  for (double eps : epsilons) {
    PlateSolver solver(fem, HeavisideProfile(kind, eps));
    solver.set_geometry(disk);
    const StatePair state = solver.solve_state(f);
    const QuadField y_q = fem.at_quadrature(state.y);

    double err = 0.0, norm = 0.0;
    for (std::size_t q = 0; q < points.size(); ++q) {
      const double c = fem.quadrature_weight(q) * inside[q];
      err += c * (y_q[q] - exact[q]) * (y_q[q] - exact[q]);
      norm += c * exact[q] * exact[q];
    }
    QuadField outside(fem.mesh_id(), std::vector<double>(points.size()));
    for (std::size_t q = 0; q < points.size(); ++q) outside[q] = 1.0 - solver.indicator().value[q];

    rows.push_back({eps, std::sqrt(err / norm), fem.integrate({state.y, state.y}, outside), state.y[center],
                    state.z[center]});
  }
  return rows;
}

std::vector<GradientRow> gradient_fd_check(const FemSystem& fem, const LevelSetParam& param,
                                           const HeavisideProfile& profile, const CostSpec& spec,
                                           const NodalField& f, const NodalField& v, std::span<const double> lambdas) {
  PlateSolver solver(fem, profile);
  solver.set_geometry(param);
  const StatePair state = solver.solve_state(f);
  const AdjointPair adjoint = solver.solve_adjoint(state, spec);
  const GradientReport gradient = gradient_field(fem, state, adjoint, spec, solver.indicator());
  const double adjoint_derivative = gradient.directional_derivative(fem, v);

  auto cost_at = [&](double lambda) {
    LevelSetParam shifted = param;
    shifted.g.axpy(lambda, v);
    solver.set_geometry(shifted);
    const StatePair s = solver.solve_state(f);
    return evaluate_cost(fem, s, spec, solver.indicator());
  };

  std::vector<GradientRow> rows;
  for (double lambda : lambdas) {
    const double fd = (cost_at(lambda) - cost_at(-lambda)) / (2.0 * lambda);
    const double diff = std::abs(fd - adjoint_derivative);
    const double gap = adjoint_derivative != 0.0 ? diff / std::abs(adjoint_derivative) : diff;
    rows.push_back({lambda, fd, adjoint_derivative, gap});
  }
  return rows;
}

std::vector<VariationRow> variation_fd_check(const FemSystem& fem, const LevelSetParam& param,
                                             const HeavisideProfile& profile, const NodalField& f,
                                             const NodalField& v, std::span<const double> lambdas) {
  PlateSolver solver(fem, profile);
  solver.set_geometry(param);
  const StatePair state = solver.solve_state(f);
  const Variation lin = solver.solve_variation(state, v);
  const double norm_u = fem.l2_norm(lin.u);
  const double norm_w = fem.l2_norm(lin.w);

  auto relative = [&](const NodalField& fd, const NodalField& exact, double norm) {
    const double diff = fem.l2_norm(fd - exact);
    return norm > 0.0 ? diff / norm : diff;
  };

  std::vector<VariationRow> rows;
  for (double lambda : lambdas) {
    LevelSetParam shifted = param;
    shifted.g.axpy(lambda, v);
    solver.set_geometry(shifted);
    const StatePair s = solver.solve_state(f);
    const NodalField du = (1.0 / lambda) * (s.z - state.z);
    const NodalField dw = (1.0 / lambda) * (s.y - state.y);
    rows.push_back({lambda, relative(du, lin.u, norm_u), relative(dw, lin.w, norm_w)});
  }
  return rows;
}

double best_gap(std::span<const GradientRow> rows) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) best = std::min(best, r.relative_gap);
  return best;
}

double best_gap(std::span<const VariationRow> rows) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) best = std::min(best, std::max(r.gap_u, r.gap_w));
  return best;
}

namespace {

void emit(std::ostream& out, std::initializer_list<double> values) {
  char buf[32];
  bool first = true;
  for (double v : values) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << (first ? "" : ",") << buf;
    first = false;
  }
  out << '\n';
}

}  // namespace

void write_csv(std::ostream& out, std::span<const PoissonRow> rows) {
  out << "n,h,l2_error,rate\n";
  for (const auto& r : rows) emit(out, {static_cast<double>(r.n), r.h, r.l2_error, r.rate});
}

void write_csv(std::ostream& out, std::span<const EpsilonRow> rows) {
  out << "epsilon,interior_l2_error,exterior_energy,y_center,z_center\n";
  for (const auto& r : rows) emit(out, {r.epsilon, r.interior_l2_error, r.exterior_energy, r.y_center, r.z_center});
}

void write_csv(std::ostream& out, std::span<const GradientRow> rows) {
  out << "lambda,fd_derivative,adjoint_derivative,relative_gap\n";
  for (const auto& r : rows) emit(out, {r.lambda, r.fd_derivative, r.adjoint_derivative, r.relative_gap});
}

void write_csv(std::ostream& out, std::span<const VariationRow> rows) {
  out << "lambda,gap_u,gap_w\n";
  for (const auto& r : rows) emit(out, {r.lambda, r.gap_u, r.gap_w});
}

std::vector<CheckResult> run_all(int mesh_n, std::ostream* tables) {
  std::vector<CheckResult> results;
  auto record = [&](std::string name, bool passed, std::string detail) {
    results.push_back({std::move(name), passed, std::move(detail)});
  };
  auto fmt = [](const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return std::string(buf);
  };

  {
    const int sizes[] = {21, 41, 81};
    const auto rows = manufactured_poisson_study(sizes);
    if (tables) write_csv(*tables << "# manufactured_poisson\n", std::span<const PoissonRow>(rows));
    bool ok = true;
    for (std::size_t k = 1; k < rows.size(); ++k) ok = ok && rows[k].rate >= 1.8 && rows[k].rate <= 2.2;
    record("manufactured_poisson_rate", ok, fmt("last rate %.4f", rows.back().rate));
  }
  {
    const RadialOracle oracle{0.5, 3.0};
    const double residual = oracle.bilaplacian_residual();
    record("radial_oracle_bilaplacian", residual <= 1e-6, fmt("residual %.3e", residual));

    FemSystem fem(TriMesh::build_structured(mesh_n));
    const double eps[] = {1e-2, 1e-3, 1e-4, 1e-5};
    const auto rows = convergence_study_epsilon(fem, oracle, eps);
    if (tables) write_csv(*tables << "# epsilon_study\n", std::span<const EpsilonRow>(rows));
    const auto& last = rows.back();
    const double y_gap = std::abs(last.y_center - oracle.y(0.0)) / oracle.y(0.0);
    const double z_gap = std::abs(last.z_center - oracle.z(0.0)) / oracle.z(0.0);
    record("plate_center_values", y_gap <= 0.05 && z_gap <= 0.05,
           fmt("y gap %.4f, z gap %.4f", y_gap, z_gap));
    bool decreasing = true;
    for (std::size_t k = 1; k < rows.size(); ++k) {
      decreasing = decreasing && rows[k].exterior_energy < rows[k - 1].exterior_energy &&
                   rows[k].interior_l2_error < rows[k - 1].interior_l2_error;
    }
    record("epsilon_monotonicity", decreasing, fmt("interior error at 1e-5: %.4f", last.interior_l2_error));
    record("interior_error_at_1e-5", last.interior_l2_error <= 0.05, fmt("%.4f", last.interior_l2_error));
  }
  {
    FemSystem fem(TriMesh::build_structured(41));
    const HeavisideProfile profile(HeavisideKind::exponential, 1e-2);
    const LevelSetParam disk = initial_g(fem.mesh(), ShapePreset::disk);
    const NodalField f(fem.mesh(), 3.0);
    const NodalField v = NodalField::interpolate(fem.mesh(), [](Point2 x) {
      return std::cos(std::numbers::pi * x.x1 / 2.0) * std::cos(std::numbers::pi * x.x2 / 2.0);
    });
    const double lambdas[] = {1e-3, 1e-4, 1e-5};

    CostSpec quadratic{CostKind::quadratic_omega, NodalField::interpolate(fem.mesh(), [](Point2 x) {
                         return -(x.x1 - 0.5) * (x.x1 - 0.5) - (x.x2 - 0.5) * (x.x2 - 0.5) + 1.0 / 16.0;
                       }), {}};
    CostSpec tracking{CostKind::tracking_E, quadratic.target,
                      [](Point2 x) { return x.x1 * x.x1 + x.x2 * x.x2 <= 0.09; }};
    for (const auto* spec : {&quadratic, &tracking}) {
      const auto rows = gradient_fd_check(fem, disk, profile, *spec, f, v, lambdas);
      if (tables) write_csv(*tables << "# gradient_fd_" << to_string(spec->kind) << '\n', std::span<const GradientRow>(rows));
      const double gap = best_gap(std::span<const GradientRow>(rows));
      record("gradient_fd_" + std::string(to_string(spec->kind)), gap <= 1e-3, fmt("best gap %.3e", gap));
    }
    const auto rows = variation_fd_check(fem, disk, profile, f, v, lambdas);
    if (tables) write_csv(*tables << "# variation_fd\n", std::span<const VariationRow>(rows));
    const double gap = best_gap(std::span<const VariationRow>(rows));
    record("variation_fd", gap <= 1e-2, fmt("best gap %.3e", gap));
  }
  return results;
}

}  // namespace plateopt::verify
