#include "plateopt/cli/app.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "plateopt/cli/presets.hpp"
#include "plateopt/cli/runner.hpp"
#include "plateopt/verify.hpp"

namespace plateopt::cli {

namespace fs = std::filesystem;

namespace {

struct RunArgs {
  std::string preset;
  std::string config;
  std::string out;
  std::optional<int> mesh_n;
  std::optional<double> epsilon;
  std::optional<int> max_iters;
  std::optional<std::uint64_t> seed;
  bool trial_contours = false;
  bool no_svg = false;
  bool no_fields = false;
  bool quiet = false;
};

int do_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
  RunManifest manifest;
  try {
    manifest = args.preset.empty() ? load_config(args.config) : preset(args.preset);
    if (args.mesh_n) manifest.mesh_n = *args.mesh_n;
    if (args.epsilon) manifest.optimizer.epsilon = *args.epsilon;
    if (args.max_iters) manifest.optimizer.stop.max_iters = *args.max_iters;
    if (manifest.mesh_n < 2) throw std::invalid_argument("--mesh-n must be at least 2");
    manifest.optimizer.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  const fs::path dir = args.out.empty()
                           ? fs::path("runs") / (args.preset.empty() ? fs::path(args.config).stem() : fs::path(args.preset))
                           : fs::path(args.out);
  RunOptions options;
  try {
    options.threads = threads_from_environment();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  options.trial_contours = args.trial_contours;
  options.write_svg = !args.no_svg;
  options.write_fields = !args.no_fields;
  options.log = args.quiet ? nullptr : &out;

  try {
    const RunResult result = execute(manifest, dir, options);
    out << "stop: " << to_string(result.run.stop_reason) << " at n=" << result.run.final_iterate().n
        << ", final cost " << format_double(result.run.final_cost()) << "\noutput: " << dir.string() << '\n';
    return kSuccess;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << '\n';
    return kRunFailure;
  }
}

int do_verify(int mesh_n, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  try {
    std::ofstream tables;
    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      tables.open(fs::path(out_dir) / "verify_tables.csv");
    }
    const auto results = verify::run_all(mesh_n, tables.is_open() ? &tables : nullptr);
    bool all = true;
    for (const auto& r : results) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << "  (" << r.detail << ")\n";
      all = all && r.passed;
    }
    return all ? kSuccess : kRunFailure;
  } catch (const std::exception& e) {
    err << "verify failed: " << e.what() << '\n';
    return kRunFailure;
  }
}

int do_preset_list(const std::string& dump_dir, std::ostream& out, std::ostream& err) {
  for (const auto& p : preset_catalog()) {
    out << p.name << "  " << p.description << '\n';
    if (dump_dir.empty()) continue;
    try {
      fs::create_directories(dump_dir);
      std::ofstream file(fs::path(dump_dir) / (p.name + ".cfg"));
      if (!file) throw std::runtime_error("cannot write into " + dump_dir);
      write_manifest(file, preset(p.name));
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kRunFailure;
    }
  }
  return kSuccess;
}

int do_export_mesh(int mesh_n, const std::string& path, std::ostream& out, std::ostream& err) {
  if (mesh_n < 2) {
    err << "error: --mesh-n must be at least 2\n";
    return kUsageError;
  }
  const auto mesh = TriMesh::build_structured(mesh_n);
  if (!fs::path(path).parent_path().empty()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream file(path);
  if (!file) {
    err << "error: cannot write " << path << '\n';
    return kRunFailure;
  }
  write_vtk_mesh(file, *mesh);
  out << mesh->num_vertices() << " vertices, " << mesh->num_triangles() << " triangles -> " << path << '\n';
  return kSuccess;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Level-set shape optimization of a simply supported plate"};
  app.name("plateopt");
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run the optimizer from a preset or config file");
  auto* preset_opt = run_cmd->add_option("--preset", run_args.preset, "Preset name (see preset-list)");
  auto* config_opt = run_cmd->add_option("--config", run_args.config, "Config or manifest file");
  preset_opt->excludes(config_opt);
  run_cmd->add_option("--out", run_args.out, "Output directory (default runs/<name>)");
  run_cmd->add_option("--mesh-n", run_args.mesh_n, "Vertices per side of the structured mesh");
  run_cmd->add_option("--epsilon", run_args.epsilon, "Penalization parameter");
  run_cmd->add_option("--max-iters", run_args.max_iters, "Iteration cap");
  run_cmd->add_option("--seed", run_args.seed, "Reserved; runs are deterministic and ignore it");
  run_cmd->add_flag("--trial-contours", run_args.trial_contours, "Export the contour of every line-search trial");
  run_cmd->add_flag("--no-svg", run_args.no_svg, "Skip SVG snapshots");
  run_cmd->add_flag("--no-fields", run_args.no_fields, "Skip VTK field exports");
  run_cmd->add_flag("--quiet", run_args.quiet, "Only print the summary");

  bool verify_all = false;
  int verify_mesh_n = 161;
  std::string verify_out;
  auto* verify_cmd = app.add_subcommand("verify", "Run the oracle suite; exit 0 iff every check passes");
  verify_cmd->add_flag("--all", verify_all, "Run every suite (the default)");
  verify_cmd->add_option("--mesh-n", verify_mesh_n, "Resolution of the plate oracle");
  verify_cmd->add_option("--out", verify_out, "Directory for the study tables");

  std::string dump_dir;
  auto* list_cmd = app.add_subcommand("preset-list", "List presets");
  list_cmd->add_option("--dump", dump_dir, "Write each preset as <name>.cfg into this directory");

  int export_n = 161;
  std::string export_path;
  auto* export_cmd = app.add_subcommand("export-mesh", "Write the structured mesh as legacy VTK");
  export_cmd->add_option("--mesh-n", export_n, "Vertices per side");
  export_cmd->add_option("--out", export_path, "Output file")->required();

  try {
    app.parse(argc, argv);
    if (run_cmd->parsed() && run_args.preset.empty() && run_args.config.empty()) {
      throw CLI::RequiredError("run needs --preset or --config");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kSuccess;
    if (run_cmd->parsed()) err << run_cmd->help();
    return kUsageError;
  }

  if (run_cmd->parsed()) return do_run(run_args, out, err);
  if (verify_cmd->parsed()) return do_verify(verify_mesh_n, verify_out, out, err);
  if (list_cmd->parsed()) return do_preset_list(dump_dir, out, err);
  return do_export_mesh(export_n, export_path, out, err);
}

}  // namespace plateopt::cli
