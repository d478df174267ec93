#include "plateopt/cli/presets.hpp"

#include <stdexcept>

namespace plateopt::cli {

namespace {

constexpr const char* kExample1Target = "-(x1-0.5)^2-(x2-0.5)^2+1/16";
constexpr const char* kRingTarget = "2*step(x1^2+x2^2-1/9)*step(1/4-x1^2-x2^2)-1";
constexpr const char* kDiskTarget = "2*step(1/4-x1^2-x2^2)-1";

RunManifest example1(DescentVariant direction, double initial_step) {
  RunManifest m;
  m.problem.load = "3";
  m.problem.target = kExample1Target;
  m.problem.initial = "two_holes";
  m.problem.cost = CostKind::quadratic_omega;
  m.optimizer.epsilon = 1e-5;
  m.optimizer.direction = direction;
  m.optimizer.line_search.initial_step = initial_step;
  m.optimizer.stop = {StopKind::abs_cost, 1e-10, 50};
  return m;
}

RunManifest example2(const char* initial, double initial_step) {
  RunManifest m;
  m.problem.load = "1";
  m.problem.target = kRingTarget;
  m.problem.initial = initial;
  m.problem.cost = CostKind::linear_omega;
  m.optimizer.epsilon = 1e-3;
  m.optimizer.direction = DescentVariant::bracket;
  m.optimizer.line_search.initial_step = initial_step;
  m.optimizer.stop = {StopKind::rel_decrease, 1e-6, 50};
  return m;
}

RunManifest example3(const char* initial, double initial_step, double min_decrease) {
  RunManifest m;
  m.problem.load = "2000";
  m.problem.target = kDiskTarget;
  m.problem.initial = initial;
  m.problem.cost = CostKind::linear_omega;
  m.optimizer.epsilon = 1e-3;
  m.optimizer.direction = DescentVariant::saturated;
  m.optimizer.line_search.initial_step = initial_step;
  m.optimizer.line_search.min_decrease = min_decrease;
  m.optimizer.stop = {StopKind::rel_decrease, 1e-6, 50};
  return m;
}

}  // namespace

const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> catalog = {
      {"example1_bracket", "f=3, quadratic cost on the domain, two-holes start, raw adjoint bracket direction"},
      {"example1_saturated", "as example1_bracket with the saturated direction R(w/eps)"},
      {"example2_disk", "f=1, linear cost against the ring target, disk start, bracket direction"},
      {"example2_twoholes", "as example2_disk from the two-holes start"},
      {"example3_disk", "f=2000, linear cost against the disk target, disk start, saturated direction"},
      {"example3_twoholes", "as example3_disk from the two-holes start"},
  };
  return catalog;
}

RunManifest preset(std::string_view name) {
  RunManifest m;
  if (name == "example1_bracket") {
    m = example1(DescentVariant::bracket, 1e-3);
  } else if (name == "example1_saturated") {
    m = example1(DescentVariant::saturated, 0.1);
  } else if (name == "example2_disk") {
    m = example2("disk", 0.11);
  } else if (name == "example2_twoholes") {
    m = example2("two_holes", 1e-3);
  } else if (name == "example3_disk") {
    m = example3("disk", 0.01, 0.0);
  } else if (name == "example3_twoholes") {
    m = example3("two_holes", 0.01, 0.0);
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  }
  m.source = std::string(name);
  return m;
}

}  // namespace plateopt::cli
