#include "plateopt/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

namespace plateopt {

Region region_from_expression(Expression expr) {
  return [expr = std::move(expr)](Point2 x) { return expr(x) >= 0.0; };
}

ShapePreset shape_preset_from_name(std::string_view name) {
  if (name == "two_holes") return ShapePreset::two_holes;
  if (name == "disk") return ShapePreset::disk;
  throw std::invalid_argument("unknown shape preset '" + std::string(name) + "'");
}

double two_holes_level(Point2 x) {
  const double r2 = x.x1 * x.x1 + x.x2 * x.x2;
  const double hole2 = (x.x1 - 0.5) * (x.x1 - 0.5) + x.x2 * x.x2;
  return std::min({r2 - 1.0 / 16.0, hole2 - 1.0 / 64.0, 1.0 - r2});
}

double disk_level(Point2 x) { return 0.75 - x.x1 * x.x1 - x.x2 * x.x2; }

LevelSetParam initial_g(const TriMesh& mesh, ShapePreset preset) {
  switch (preset) {
    case ShapePreset::two_holes: return {NodalField::interpolate(mesh, two_holes_level), {}};
    case ShapePreset::disk: return {NodalField::interpolate(mesh, disk_level), {}};
  }
  throw std::invalid_argument("initial_g: unknown preset");
}

LevelSetParam initial_g(const TriMesh& mesh, const Expression& expression) {
  return {NodalField::interpolate(mesh, [&](Point2 x) { return expression(x); }), {}};
}

IndicatorValues indicator_at_quadrature(const LevelSetParam& param, const HeavisideProfile& profile,
                                        const FemSystem& fem) {
  QuadField g_q = fem.at_quadrature(param.g);
  QuadField value(fem.mesh_id(), std::vector<double>(g_q.size()));
  QuadField derivative(fem.mesh_id(), std::vector<double>(g_q.size()));
  for (std::size_t q = 0; q < g_q.size(); ++q) {
    value[q] = profile.value(g_q[q]);
    derivative[q] = profile.derivative(g_q[q]);
  }
  return {std::move(value), std::move(derivative)};
}

LevelSetParam project_constraint(LevelSetParam param, const TriMesh& mesh) {
  if (param.g.mesh_id() != mesh.id()) throw MeshMismatch();
  if (!param.constrained()) return param;
  for (std::size_t i = 0; i < mesh.num_vertices(); ++i) {
    if (param.constraint(mesh.vertex(i))) param.g[i] = std::max(param.g[i], 0.0);
  }
  return param;
}

namespace {

constexpr std::uint64_t kVertexTag = 0xFFFFFFFFull;

std::uint64_t edge_key(int a, int b) {
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (lo << 32) | hi;
}

std::uint64_t vertex_key(int v) { return (static_cast<std::uint64_t>(v) << 32) | kVertexTag; }

struct Segment {
  std::uint64_t from;
  std::uint64_t to;
};

}  // namespace

std::vector<Polyline> extract_contour(const TriMesh& mesh, const NodalField& g) {
  if (g.mesh_id() != mesh.id()) throw MeshMismatch();

  std::map<std::uint64_t, Point2> points;
  std::vector<Segment> segments;

  auto crossing = [&](int in, int out) {
    // in: g >= 0, out: g < 0
    if (g[in] == 0.0) {
      const auto key = vertex_key(in);
      points.emplace(key, mesh.vertex(in));
      return key;
    }
    const auto key = edge_key(in, out);
    const double t = g[in] / (g[in] - g[out]);
    const auto& a = mesh.vertex(in);
    const auto& b = mesh.vertex(out);
    points.emplace(key, Point2{a.x1 + t * (b.x1 - a.x1), a.x2 + t * (b.x2 - a.x2)});
    return key;
  };

  for (const auto& tri : mesh.triangles()) {
    std::uint64_t ends[2];
    int found = 0;
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      const bool ia = g[a] >= 0.0;
      const bool ib = g[b] >= 0.0;
      if (ia == ib) continue;
      ends[found++] = ia ? crossing(a, b) : crossing(b, a);
    }
    if (found == 2 && ends[0] != ends[1]) segments.push_back({ends[0], ends[1]});
  }

  std::map<std::uint64_t, std::vector<std::size_t>> incident;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    incident[segments[s].from].push_back(s);
    incident[segments[s].to].push_back(s);
  }

  std::vector<bool> used(segments.size(), false);
  auto next_segment = [&](std::uint64_t key) -> std::ptrdiff_t {
    for (std::size_t s : incident[key]) {
      if (!used[s]) return static_cast<std::ptrdiff_t>(s);
    }
    return -1;
  };
  auto other_end = [&](std::size_t s, std::uint64_t key) {
    return segments[s].from == key ? segments[s].to : segments[s].from;
  };

  // Follows unused segments from `from` until a dead end or until `stop` is reached.
  auto walk = [&](std::uint64_t from, std::uint64_t stop) {
    std::vector<std::uint64_t> keys;
    std::uint64_t current = from;
    for (auto s = next_segment(current); s >= 0; s = next_segment(current)) {
      used[s] = true;
      current = other_end(static_cast<std::size_t>(s), current);
      keys.push_back(current);
      if (current == stop) break;
    }
    return keys;
  };

  std::vector<Polyline> result;
  for (std::size_t start = 0; start < segments.size(); ++start) {
    if (used[start]) continue;
    used[start] = true;
    const auto first = segments[start].from;
    std::vector<std::uint64_t> chain{first, segments[start].to};
    const auto forward = walk(chain.back(), first);
    chain.insert(chain.end(), forward.begin(), forward.end());
    Polyline line;
    line.closed = chain.back() == first;
    if (line.closed) {
      chain.pop_back();
    } else {
      const auto backward = walk(first, chain.back());
      chain.insert(chain.begin(), backward.rbegin(), backward.rend());
    }
    line.points.reserve(chain.size());
    for (auto key : chain) line.points.push_back(points.at(key));
    result.push_back(std::move(line));
  }
  return result;
}

double positive_area(const TriMesh& mesh, const NodalField& g) {
  if (g.mesh_id() != mesh.id()) throw MeshMismatch();
  double total = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const double area = mesh.area(t);
    int inside = 0;
    for (int v : tri) inside += g[v] >= 0.0 ? 1 : 0;
    if (inside == 3) {
      total += area;
    } else if (inside == 1 || inside == 2) {
      // Rotate so that the lone vertex comes first.
      const bool lone_inside = inside == 1;
      int k = 0;
      while (((g[tri[k]] >= 0.0) != lone_inside)) ++k;
      const double a = g[tri[k]];
      const double b = g[tri[(k + 1) % 3]];
      const double c = g[tri[(k + 2) % 3]];
      const double corner = area * (a / (a - b)) * (a / (a - c));
      total += lone_inside ? corner : area - corner;
    }
  }
  return total;
}

void write_contour_csv(std::ostream& out, const std::vector<Polyline>& contours) {
  out << "polyline_id,x1,x2\n";
  char buf[96];
  for (std::size_t id = 0; id < contours.size(); ++id) {
    const auto& line = contours[id];
    auto emit = [&](const Point2& p) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", id, p.x1, p.x2);
      out << buf;
    };
    for (const auto& p : line.points) emit(p);
    if (line.closed && !line.points.empty()) emit(line.points.front());
  }
}

void write_domain_svg(std::ostream& out, const FemSystem& fem, const QuadField& indicator,
                      const std::vector<Polyline>& contours, int pixels) {
  fem.check(indicator);
  const auto& mesh = fem.mesh();
  const double scale = pixels / 2.0;
  auto px = [&](double x) { return (x + 1.0) * scale; };
  auto py = [&](double y) { return (1.0 - y) * scale; };
  char buf[160];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixels << "\" height=\"" << pixels
      << "\" viewBox=\"0 0 " << pixels << ' ' << pixels << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << pixels << "\" height=\"" << pixels
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  out << "<g fill=\"#8fb3d9\" stroke=\"none\">\n";
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const double mean = (indicator[3 * t] + indicator[3 * t + 1] + indicator[3 * t + 2]) / 3.0;
    if (mean < 0.5) continue;
    const auto& tri = mesh.triangle(t);
    const auto& a = mesh.vertex(tri[0]);
    const auto& b = mesh.vertex(tri[1]);
    const auto& c = mesh.vertex(tri[2]);
    std::snprintf(buf, sizeof buf, "<polygon points=\"%.2f,%.2f %.2f,%.2f %.2f,%.2f\"/>\n", px(a.x1), py(a.x2),
                  px(b.x1), py(b.x2), px(c.x1), py(c.x2));
    out << buf;
  }
  out << "</g>\n<g fill=\"none\" stroke=\"#1a3d66\" stroke-width=\"1.5\">\n";
  for (const auto& line : contours) {
    out << (line.closed ? "<polygon" : "<polyline") << " points=\"";
    for (const auto& p : line.points) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(p.x1), py(p.x2));
      out << buf;
    }
    out << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
}

}  // namespace plateopt
