#include "plateopt/cli/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "plateopt/expression.hpp"
#include "plateopt/io.hpp"

namespace plateopt::cli {

namespace fs = std::filesystem;

namespace {

std::string numbered(const char* pattern, int n) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, n);
  return buf;
}

std::ofstream open_output(const fs::path& path) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

unsigned threads_from_environment() {
  if (const char* env = std::getenv("PLATEOPT_THREADS")) {
    try {
      const int value = std::stoi(env);
      if (value >= 1) return static_cast<unsigned>(value);
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("PLATEOPT_THREADS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Problem build_problem(const RunManifest& manifest, unsigned threads) {
  Problem problem;
  problem.fem = std::make_shared<const FemSystem>(TriMesh::build_structured(manifest.mesh_n));
  const TriMesh& mesh = problem.fem->mesh();
  const ProblemSpec& spec = manifest.problem;

  const Expression load = Expression::parse(spec.load);
  problem.load = NodalField::interpolate(mesh, [&](Point2 x) { return load(x); });

  if (spec.initial == "two_holes" || spec.initial == "disk") {
    problem.g0 = initial_g(mesh, shape_preset_from_name(spec.initial));
  } else {
    problem.g0 = initial_g(mesh, Expression::parse(spec.initial));
  }
  if (!spec.constraint.empty()) {
    problem.g0.constraint = region_from_expression(Expression::parse(spec.constraint));
    problem.g0 = project_constraint(std::move(problem.g0), mesh);
  }

  problem.config = manifest.optimizer;
  problem.config.threads = threads;
  const Expression target = Expression::parse(spec.target);
  problem.config.cost.kind = spec.cost;
  problem.config.cost.target = NodalField::interpolate(mesh, [&](Point2 x) { return target(x); });
  if (!spec.region.empty()) problem.config.cost.region = region_from_expression(Expression::parse(spec.region));
  validate(problem.config.cost, *problem.fem);
  return problem;
}

void write_cost_history(std::ostream& out, const OptRun& run) {
  out << "n,cost,step,trials,direction_norm,descent_value\n";
  for (const Iterate& it : run.iterates) {
    out << it.n << ',' << format_double(it.cost) << ',' << format_double(it.step) << ',' << it.trials.size() << ','
        << format_double(it.direction_norm) << ',' << format_double(it.descent_value) << '\n';
  }
}

RunResult execute(const RunManifest& manifest, const fs::path& out, const RunOptions& options) {
  const Problem problem = build_problem(manifest, options.threads);
  const FemSystem& fem = *problem.fem;
  const TriMesh& mesh = fem.mesh();
  fs::create_directories(out);

  std::vector<std::string> written;
  auto record = [&](const std::string& rel) { written.push_back(rel); };
  std::map<int, NodalField> directions;

  const IterateObserver observer = [&](const IterateView& view) {
    const auto contours = extract_contour(mesh, view.param.g);
    const std::string csv = numbered("contours/iter_%03d.csv", view.n);
    {
      auto file = open_output(out / csv);
      write_contour_csv(file, contours);
    }
    record(csv);
    if (options.write_svg) {
      const std::string svg = numbered("contours/iter_%03d.svg", view.n);
      auto file = open_output(out / svg);
      write_domain_svg(file, fem, view.indicator.value, contours);
      record(svg);
    }
    if (options.write_fields) {
      std::vector<std::pair<std::string, const NodalField*>> fields = {
          {"g", &view.param.g}, {"y", &view.state.y}, {"z", &view.state.z}};
      if (view.adjoint) {
        fields.emplace_back("p", &view.adjoint->p);
        fields.emplace_back("q", &view.adjoint->q);
      }
      if (view.direction) fields.emplace_back("direction", view.direction);
      const std::string vtk = numbered("fields/iter_%03d.vtk", view.n);
      auto file = open_output(out / vtk);
      write_vtk_fields(file, mesh, fields);
      record(vtk);
    }
    if (options.trial_contours && view.direction) directions.emplace(view.n, *view.direction);
    if (options.log) {
      char line[160];
      std::snprintf(line, sizeof line, "iter %3d  cost % .9e  area %.6f\n", view.n, view.cost,
                    positive_area(mesh, view.param.g));
      *options.log << line << std::flush;
    }
  };

  RunResult result;
  result.run = run(fem, problem.config, problem.g0, problem.load, observer);

  {
    auto file = open_output(out / "cost_history.csv");
    write_cost_history(file, result.run);
  }
  record("cost_history.csv");

  for (const Iterate& it : result.run.iterates) {
    if (it.trials.empty()) continue;
    const std::string rel = numbered("trials/iter_%03d.csv", it.n);
    {
      auto file = open_output(out / rel);
      file << "trial,step,cost\n";
      for (std::size_t k = 0; k < it.trials.size(); ++k) {
        file << k << ',' << format_double(it.trials[k].step) << ',' << format_double(it.trials[k].cost) << '\n';
      }
    }
    record(rel);
    const auto d = directions.find(it.n);
    if (d == directions.end()) continue;
    for (std::size_t k = 0; k < it.trials.size(); ++k) {
      LevelSetParam trial{it.g, problem.g0.constraint};
      trial.g.axpy(it.trials[k].step, d->second);
      trial = project_constraint(std::move(trial), mesh);
      const std::string name = numbered("trials/iter_%03d", it.n) + numbered("_trial_%02d.csv", static_cast<int>(k));
      auto file = open_output(out / name);
      write_contour_csv(file, extract_contour(mesh, trial.g));
      record(name);
    }
  }

  std::sort(written.begin(), written.end());
  for (const auto& rel : written) result.artifacts.push_back({rel, file_checksum(out / rel)});

  const RunOutcome outcome{result.run.stop_reason, result.run.final_iterate().n, result.run.final_cost()};
  auto file = open_output(out / "manifest.txt");
  write_manifest(file, manifest, &outcome, result.artifacts);
  return result;
}

}  // namespace plateopt::cli
