// harness.hpp — Runs configured experiments point by point and collects result rows

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qfridge/config.hpp"

namespace qfridge {

inline constexpr std::size_t kMaxSites = 3;
inline constexpr std::size_t kMeasureCount = 3;

/// Minimum T1^0 - T1^s that counts as cooling.
inline constexpr double kCoolingThreshold = 1e-3;

struct ResultRow {
    std::size_t index = 0;
    std::string name;
    std::string interaction;
    std::string mode;
    std::string method;
    std::string measure;  // primary distance measure, drives eta

    std::array<std::optional<double>, kMaxSites> spin;
    std::array<std::optional<double>, kMaxSites> field;
    std::array<std::optional<double>, kMaxSites> t_initial;
    std::optional<double> coupling;
    std::optional<double> gamma;
    std::optional<double> delta;
    std::optional<double> phi;
    std::optional<double> rate;   // flat Gamma
    std::optional<double> alpha;  // Ohmic strength of bath 1

    // t_steady[site][measure], measure order trace, relent, fidelity
    std::array<std::array<std::optional<double>, kMeasureCount>, kMaxSites> t_steady;
    std::optional<double> entropy_normalized;  // site 1
    std::array<std::optional<double>, kMaxSites> heat;
    std::optional<double> work;
    std::optional<double> entropy_rate;
    std::optional<double> entropy_production;
    std::optional<double> eta;

    bool converged = false;
    std::optional<double> residual;
    std::optional<double> steady_time;
    std::optional<bool> q1_positive;
    std::optional<bool> q2_negative;
    std::optional<bool> w_positive;
    std::optional<bool> sigma_nonneg;
    std::optional<bool> cooling;
    std::string error;

    double wall_seconds = 0.0;  // kept out of the CSV so output bytes stay deterministic

    /// T_1^s under the first configured measure.
    std::optional<double> primary_t1() const;
    std::optional<double> t_steady_for(std::size_t site, DistanceMeasure m) const;

    bool operator==(const ResultRow& other) const;
};

std::size_t measure_index(DistanceMeasure m);

/// Never throws for physics failures: they land in `row.error` with converged = false.
ResultRow run_point(const ExperimentConfig& config, std::size_t index = 0);

/// Trace-distance DLT when available, else the first configured measure.
bool classify_cooling(const ResultRow& row);

/// Thread count from QFRIDGE_THREADS if set, else `requested`, else hardware concurrency.
unsigned resolve_threads(std::optional<unsigned> requested);

/// Evaluates every grid point of `config.sweep` (or the single point) on a worker pool;
/// rows come back in grid order.
std::vector<ResultRow> sweep_grid(const ExperimentConfig& config, unsigned threads = 1);

} // namespace qfridge
