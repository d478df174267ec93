#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <vector>

#include "plateopt/cli/config.hpp"

namespace plateopt::cli {

/// Discrete problem data built from a manifest on a concrete mesh.
struct Problem {
  std::shared_ptr<const FemSystem> fem;
  LevelSetParam g0;
  NodalField load;
  OptConfig config;  // manifest settings with the cost spec filled in
};

/// Throws std::invalid_argument (expression or consistency errors).
Problem build_problem(const RunManifest& manifest, unsigned threads = 1);

struct RunOptions {
  unsigned threads = 1;
  bool write_svg = true;
  bool write_fields = true;
  /// Also write the zero contour of every line-search trial.
  bool trial_contours = false;
  std::ostream* log = nullptr;
};

struct RunResult {
  OptRun run;
  std::vector<ArtifactChecksum> artifacts;
};

/// Runs the optimizer and writes manifest.txt, cost_history.csv, contours/,
/// fields/ and trials/ under `out`. OptimizerError propagates.
RunResult execute(const RunManifest& manifest, const std::filesystem::path& out, const RunOptions& options = {});

/// "n,cost,step,trials,direction_norm,descent_value" with round-trip doubles.
void write_cost_history(std::ostream& out, const OptRun& run);

/// Worker count from PLATEOPT_THREADS, else the hardware concurrency.
unsigned threads_from_environment();

}  // namespace plateopt::cli
