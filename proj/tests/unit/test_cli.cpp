#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "plateopt/cli/app.hpp"
#include "plateopt/cli/presets.hpp"
#include "plateopt/cli/runner.hpp"
#include "plateopt/io.hpp"

using namespace plateopt;
using namespace plateopt::cli;
namespace fs = std::filesystem;

namespace {

RunManifest parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

int config_error_line(const std::string& text) {
  try {
    (void)parse(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

struct Cli {
  std::ostringstream out, err;
  int operator()(std::vector<std::string> args) {
    args.insert(args.begin(), "plateopt");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("plateopt_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Config, ParsesSectionsAndComments) {
  const auto m = parse(
      "# a comment\n"
      "[mesh]\n"
      "n = 41\n"
      "\n"
      "[problem]\n"
      "load = 3   # inline comment\n"
      "target = -(x1-0.5)^2-(x2-0.5)^2+1/16\n"
      "initial = disk\n"
      "cost = linear_omega\n"
      "[optimizer]\n"
      "epsilon = 1e-5\n"
      "direction = bracket\n"
      "stop = rel_decrease\n"
      "tol = 1e-6\n");
  EXPECT_EQ(m.mesh_n, 41);
  EXPECT_EQ(m.problem.load, "3");
  EXPECT_EQ(m.problem.initial, "disk");
  EXPECT_EQ(m.problem.cost, CostKind::linear_omega);
  EXPECT_EQ(m.optimizer.epsilon, 1e-5);
  EXPECT_EQ(m.optimizer.direction, DescentVariant::bracket);
  EXPECT_EQ(m.optimizer.stop.kind, StopKind::rel_decrease);
  EXPECT_EQ(m.optimizer.stop.tol, 1e-6);
  EXPECT_EQ(m.optimizer.line_search.max_trials, 25);
  EXPECT_EQ(m.source, "test.cfg");
}

TEST(Config, ManifestRoundTrip) {
  for (const auto& info : preset_catalog()) {
    RunManifest m = preset(info.name);
    m.optimizer.line_search.initial_step = 0.1 + 1e-17;  // not representable in few digits
    m.problem.region = "0.09 - x1^2 - x2^2";
    std::ostringstream text;
    write_manifest(text, m, nullptr, {{"cost_history.csv", 42}});
    const RunManifest back = parse(text.str());
    std::ostringstream again;
    write_manifest(again, back, nullptr, {{"cost_history.csv", 42}});
    // The source line differs (preset name vs. file name) and nothing else.
    const auto strip = [](std::string s) {
      const auto at = s.find("source = ");
      return s.erase(at, s.find('\n', at) - at);
    };
    EXPECT_EQ(strip(text.str()), strip(again.str())) << info.name;
    EXPECT_EQ(back.optimizer.line_search.initial_step, m.optimizer.line_search.initial_step);
  }
}

TEST(Config, LineNumberedDiagnostics) {
  EXPECT_EQ(config_error_line("[mesh]\nn = 3\ngarbage\n"), 3);
  EXPECT_EQ(config_error_line("[mesh]\nn = three\n"), 2);
  EXPECT_EQ(config_error_line("\n[nope]\n"), 2);
  EXPECT_EQ(config_error_line("n = 3\n"), 1);
  EXPECT_EQ(config_error_line("[mesh]\nsize = 3\n"), 2);
  EXPECT_EQ(config_error_line("[mesh]\nn = 3\nn = 4\n"), 3);
  EXPECT_EQ(config_error_line("[problem]\n\ntarget = 1 + * x1\n"), 3);
  EXPECT_EQ(config_error_line("[optimizer]\nstop = sometimes\n"), 2);
  EXPECT_EQ(config_error_line("[optimizer\n"), 1);
  EXPECT_EQ(config_error_line("[optimizer]\ntol =\n"), 2);
  EXPECT_EQ(config_error_line("[mesh]\nn = 1\n"), 0);
  EXPECT_EQ(config_error_line("[optimizer]\nshrink = 2\n"), 0);
  EXPECT_EQ(config_error_line("[problem]\ncost = tracking_E\n"), 0);
  try {
    (void)parse("[mesh]\nn = 3\ngarbage\n");
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("test.cfg:3:", 0), 0u);
  }
}

TEST(Presets, MatchTheExamples) {
  ASSERT_EQ(preset_catalog().size(), 6u);
  const auto e1 = preset("example1_saturated");
  EXPECT_EQ(e1.optimizer.epsilon, 1e-5);
  EXPECT_EQ(e1.optimizer.direction, DescentVariant::saturated);
  EXPECT_EQ(e1.optimizer.stop.kind, StopKind::abs_cost);
  EXPECT_EQ(e1.optimizer.stop.tol, 1e-10);
  EXPECT_EQ(e1.problem.load, "3");
  EXPECT_EQ(e1.problem.cost, CostKind::quadratic_omega);

  const auto e2 = preset("example2_disk");
  EXPECT_EQ(e2.problem.initial, "disk");
  EXPECT_EQ(e2.optimizer.stop.kind, StopKind::rel_decrease);
  EXPECT_EQ(e2.optimizer.stop.tol, 1e-6);
  EXPECT_EQ(e2.optimizer.epsilon, 1e-3);
  EXPECT_EQ(e2.problem.cost, CostKind::linear_omega);

  const auto e3 = preset("example3_twoholes");
  EXPECT_EQ(e3.problem.initial, "two_holes");
  EXPECT_EQ(e3.problem.load, "2000");
  EXPECT_EQ(e3.optimizer.direction, DescentVariant::saturated);
  EXPECT_THROW((void)preset("example4"), std::invalid_argument);

  // The disk preset g0 is -x1^2 - x2^2 + 3/4.
  const auto problem = build_problem(e2);
  const auto& mesh = problem.fem->mesh();
  for (std::size_t i = 0; i < mesh.num_vertices(); i += 97) {
    const auto& x = mesh.vertex(i);
    EXPECT_NEAR(problem.g0.g[i], -x.x1 * x.x1 - x.x2 * x.x2 + 0.75, 1e-15);
  }
}

TEST(CliApp, UsageErrorsExitWithTwo) {
  EXPECT_EQ(Cli()({}), kUsageError);
  EXPECT_EQ(Cli()({"frobnicate"}), kUsageError);
  EXPECT_EQ(Cli()({"run"}), kUsageError);
  EXPECT_EQ(Cli()({"run", "--preset", "example1_bracket", "--bogus"}), kUsageError);
  EXPECT_EQ(Cli()({"run", "--preset", "example1_bracket", "--config", "x.cfg"}), kUsageError);
  EXPECT_EQ(Cli()({"run", "--preset", "nope"}), kUsageError);
  EXPECT_EQ(Cli()({"run", "--preset", "example1_bracket", "--mesh-n", "1"}), kUsageError);
  EXPECT_EQ(Cli()({"run", "--preset", "example1_bracket", "--epsilon", "-1"}), kUsageError);
  EXPECT_EQ(Cli()({"run", "--config", "/nonexistent/file.cfg"}), kUsageError);
  EXPECT_EQ(Cli()({"--help"}), kSuccess);
}

TEST(CliApp, MalformedConfigReportsLine) {
  const auto dir = scratch("malformed");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "bad.cfg");
    cfg << "[mesh]\nn = 21\n[problem]\nload = 3 +\n";
  }
  Cli cli;
  EXPECT_EQ(cli({"run", "--config", (dir / "bad.cfg").string(), "--out", (dir / "out").string()}), kUsageError);
  EXPECT_NE(cli.err.str().find("bad.cfg:4:"), std::string::npos) << cli.err.str();
  EXPECT_FALSE(fs::exists(dir / "out"));
}

TEST(CliApp, PresetListAndDump) {
  const auto dir = scratch("dump");
  Cli cli;
  EXPECT_EQ(cli({"preset-list", "--dump", dir.string()}), kSuccess);
  for (const auto& p : preset_catalog()) {
    EXPECT_NE(cli.out.str().find(p.name), std::string::npos);
    ASSERT_TRUE(fs::exists(dir / (p.name + ".cfg")));
    const auto m = load_config((dir / (p.name + ".cfg")).string());
    EXPECT_EQ(m.optimizer.epsilon, preset(p.name).optimizer.epsilon);
  }
}

TEST(CliApp, ExportMesh) {
  const auto dir = scratch("mesh");
  Cli cli;
  EXPECT_EQ(cli({"export-mesh", "--mesh-n", "5", "--out", (dir / "m.vtk").string()}), kSuccess);
  EXPECT_NE(slurp(dir / "m.vtk").find("POINTS 25 double"), std::string::npos);
  EXPECT_EQ(Cli()({"export-mesh"}), kUsageError);
}

TEST(CliApp, BadThreadCount) {
  ::setenv("PLATEOPT_THREADS", "zero", 1);
  EXPECT_EQ(Cli()({"run", "--preset", "example1_bracket", "--mesh-n", "5", "--out", scratch("threads").string()}),
            kUsageError);
  ::unsetenv("PLATEOPT_THREADS");
}

TEST(CliApp, RunWritesArtifactsAndReplaysBitwise) {
  const auto dir = scratch("run");
  Cli first;
  ASSERT_EQ(first({"run", "--preset", "example1_saturated", "--mesh-n", "41", "--out", (dir / "a").string(),
                   "--trial-contours", "--quiet"}),
            kSuccess)
      << first.err.str();
  for (const char* name : {"manifest.txt", "cost_history.csv", "contours/iter_000.csv", "contours/iter_000.svg",
                           "fields/iter_000.vtk", "trials/iter_000.csv", "trials/iter_000_trial_00.csv"}) {
    EXPECT_TRUE(fs::exists(dir / "a" / name)) << name;
  }

  // Final row: |j| < 1e-9.
  std::istringstream history(slurp(dir / "a" / "cost_history.csv"));
  std::string line, last;
  std::getline(history, line);
  EXPECT_EQ(line, "n,cost,step,trials,direction_norm,descent_value");
  while (std::getline(history, line)) last = line;
  const double final_cost = std::stod(last.substr(last.find(',') + 1));
  EXPECT_LT(std::abs(final_cost), 1e-9);

  // Checksums listed in the manifest match the files.
  const std::string manifest = slurp(dir / "a" / "manifest.txt");
  EXPECT_NE(manifest.find("cost_history.csv = fnv1a64:" + hex64(file_checksum(dir / "a" / "cost_history.csv"))),
            std::string::npos);
  EXPECT_NE(manifest.find("stop_reason = abs_cost"), std::string::npos);

  // Replaying the manifest reproduces the history byte for byte.
  ::setenv("PLATEOPT_THREADS", "3", 1);
  Cli replay;
  ASSERT_EQ(replay({"run", "--config", (dir / "a" / "manifest.txt").string(), "--out", (dir / "b").string(),
                    "--no-svg", "--no-fields", "--quiet"}),
            kSuccess)
      << replay.err.str();
  ::unsetenv("PLATEOPT_THREADS");
  EXPECT_EQ(slurp(dir / "a" / "cost_history.csv"), slurp(dir / "b" / "cost_history.csv"));
  EXPECT_FALSE(fs::exists(dir / "b" / "fields"));
}

TEST(CliApp, VerifyPasses) {
  Cli cli;
  EXPECT_EQ(cli({"verify", "--all", "--mesh-n", "81"}), kSuccess) << cli.out.str();
  EXPECT_EQ(cli.out.str().find("FAIL"), std::string::npos);
}
