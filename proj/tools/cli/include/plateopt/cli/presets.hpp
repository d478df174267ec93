#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "plateopt/cli/config.hpp"

namespace plateopt::cli {

struct PresetInfo {
  std::string name;
  std::string description;
};

const std::vector<PresetInfo>& preset_catalog();

/// Throws std::invalid_argument for an unknown name.
RunManifest preset(std::string_view name);

}  // namespace plateopt::cli
