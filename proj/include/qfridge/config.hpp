// config.hpp — Experiment configuration: sectioned key-value files and sweep definitions
//
// File format (see README for the full key list):
//
//   # comment
//   [system]
//   spins = 1/2, 1/2
//   fields = 1.1, 1.3
//   interaction = xx
//   J = 0.09
//
//   [sweep]
//   axis1 = J: 0.02, 0.05, 0.09
//   axis2 = j: linspace(0.5, 4, 8)
//   link = T2 = T1 + 0.4

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfridge/thermodynamics.hpp"
#include "qfridge/thermometry.hpp"

namespace qfridge {

/// Thrown for any schema or syntax problem; `what()` carries "<source>:<line>: ..." when a line is known.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SteadyStateMethod { Integrate, Nullspace };

struct SweepAxis {
    std::string parameter;
    std::vector<double> values;
};

/// target = source + offset, applied after the axes at every grid point.
struct SweepLink {
    std::string target;
    std::string source;
    double offset = 0.0;
};

struct SweepSpec {
    std::vector<SweepAxis> axes;  // at most two; axis 1 is the outer loop
    std::vector<SweepLink> links;

    std::size_t point_count() const;
    /// Axis values for grid index `index` (row-major over the axes).
    std::vector<double> point(std::size_t index) const;
    void validate() const;
};

struct ExperimentConfig {
    std::string name = "custom";
    SystemSpec system;
    BathSpec baths;
    QmeMode mode = QmeMode::Local;
    std::optional<HeatConvention> heat_convention;  // defaults to the QME mode
    SteadyStateMethod method = SteadyStateMethod::Integrate;
    EvolutionConfig evolution;
    std::vector<DistanceMeasure> measures = {DistanceMeasure::TraceDistance};
    TemperatureSearch search;        // t_max is overwritten by search_factor * max T_r^0
    double search_factor = 10.0;
    std::optional<double> zz_coupling;  // J*Delta held fixed while J varies
    std::optional<SweepSpec> sweep;
    std::string output_path;
    std::string source_text;  // exact text the config was parsed from

    HeatConvention effective_heat_convention() const;
    TemperatureSearch effective_search() const;

    /// Cross-field checks: global mode needs Ohmic baths, local mode needs flat rates.
    void validate() const;
};

ExperimentConfig parse_config(std::string_view text, std::string_view source_name = "<config>");
ExperimentConfig load_config(const std::string& path);

/// Sweepable parameter names: j, j1..j3, J, gamma, delta, Jdelta, phi, h1..h3, T1..T3, Gamma, alpha.
void apply_parameter(ExperimentConfig& config, std::string_view name, double value);
double read_parameter(const ExperimentConfig& config, std::string_view name);
bool is_sweep_parameter(std::string_view name);

/// Config for one grid point of `config.sweep` (the sweep itself is cleared).
ExperimentConfig derive_point(const ExperimentConfig& config, std::size_t index);

/// Parses "1/2", "3/2", "0.5", "2" and returns j.
double parse_spin_value(std::string_view text);

} // namespace qfridge
