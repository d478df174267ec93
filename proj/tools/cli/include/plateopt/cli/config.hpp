#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plateopt/optimizer.hpp"

namespace plateopt::cli {

/// Problem data as closed-form expressions in x1, x2 (see docs/config-format.md).
struct ProblemSpec {
  std::string load = "1";
  std::string target = "0";
  /// "two_holes", "disk", or an expression for g0.
  std::string initial = "two_holes";
  /// Observation set E for tracking_E, as {expr >= 0}. Empty when unused.
  std::string region;
  /// Set where g >= 0 is enforced, as {expr >= 0}. Empty when inactive.
  std::string constraint;
  CostKind cost = CostKind::quadratic_omega;
};

/// Everything that determines a run. The optimizer's cost spec is rebuilt from
/// `problem` once the mesh exists, so `optimizer.cost` is ignored here.
struct RunManifest {
  std::string source;  // preset name or config path
  int mesh_n = 161;
  ProblemSpec problem;
  OptConfig optimizer;
};

/// Malformed configuration text. `line()` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string origin, int line, const std::string& message);
  [[nodiscard]] int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Parses the sectioned key-value format. Keys not given keep the defaults of
/// RunManifest. Sections [run], [artifacts] and [result] written into
/// manifests are accepted and ignored, so a manifest replays as a config.
RunManifest parse_config(std::istream& in, const std::string& origin);
RunManifest load_config(const std::string& path);

struct ArtifactChecksum {
  std::string path;  // relative to the output directory
  std::uint64_t checksum = 0;
};

struct RunOutcome {
  StopReason stop_reason = StopReason::none;
  int iterations = 0;
  double final_cost = 0.0;
};

/// Writes the manifest. Doubles use 17 significant digits so that parsing the
/// output recovers every value exactly.
void write_manifest(std::ostream& out, const RunManifest& manifest, const RunOutcome* outcome = nullptr,
                    const std::vector<ArtifactChecksum>& artifacts = {});

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace plateopt::cli
