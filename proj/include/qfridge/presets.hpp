// presets.hpp — Built-in experiment configurations

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qfridge/config.hpp"

namespace qfridge {

struct Preset {
    std::string name;
    std::string description;
    std::string text;  // configuration file contents
};

const std::vector<Preset>& presets();

/// Throws std::invalid_argument for an unknown name.
const Preset& find_preset(std::string_view name);

ExperimentConfig load_preset(std::string_view name);

} // namespace qfridge
