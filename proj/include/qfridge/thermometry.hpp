// thermometry.hpp — Distance-based and population-based local temperatures, entropies
//
// The distance-based local temperature of a single-site state rho_r is the
// temperature T' of the canonical state exp(-h_r S^z / T') / Z closest to rho_r
// under the chosen distance. It is found by a log-spaced scan followed by
// golden-section refinement of the best bracket.

#pragma once

#include <string>
#include <string_view>

#include "qfridge/baths.hpp"

namespace qfridge {

enum class DistanceMeasure { TraceDistance, RelativeEntropy, FidelityBased };

std::string_view to_string(DistanceMeasure m);
DistanceMeasure parse_distance_measure(std::string_view name);  // "trace" | "relent" | "fidelity"

/// TraceDistance: ||a - b||_1 / 2. RelativeEntropy: Tr[a log2 a - a log2 b], +inf when
/// supp(a) is not inside supp(b). FidelityBased: 1 - F with F = (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double distance(const DensityMatrix& a, const DensityMatrix& b, DistanceMeasure measure);

struct TemperatureSearch {
    double t_min = 1e-3;
    double t_max = 100.0;
    int scan_points = 2000;
    double tolerance = 1e-8;  // final bracket width in T
};

struct LocalTemperatureResult {
    double temperature = 0.0;
    double residual = 0.0;  // distance at the optimum
    DistanceMeasure measure = DistanceMeasure::TraceDistance;
};

/// Throws std::runtime_error if the optimum sits on the edge of the search interval.
LocalTemperatureResult dlt(const DensityMatrix& rho_r, SpinQuantumNumber j, double field, DistanceMeasure measure,
                           const TemperatureSearch& search = {});

/// h / ln(1/tau1 - 1) with tau1 the excited (m = +1/2) population of a diagonal qubit state.
double plt_qubit(const DensityMatrix& rho_r, double field);

/// Von Neumann entropy in bits; eigenvalues below kLogFloor contribute zero.
double von_neumann_entropy(const DensityMatrix& rho);

struct EntropyMetrics {
    double initial = 0.0;
    double steady = 0.0;
    double normalized = 0.0;  // steady / initial
};

EntropyMetrics entropy_metrics(const DensityMatrix& rho_initial, const DensityMatrix& rho_steady);

/// (T0 - Ts) / T0; positive means the site was cooled.
double cooling_factor(double initial_temperature, double steady_temperature);

} // namespace qfridge
