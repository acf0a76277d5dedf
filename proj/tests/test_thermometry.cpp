#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace qfridge;
using namespace qfridge::testing;

namespace {

const DistanceMeasure kAll[] = {DistanceMeasure::TraceDistance, DistanceMeasure::RelativeEntropy,
                                DistanceMeasure::FidelityBased};

DensityMatrix qubit(double excited)
{
    Operator m = Operator::Zero(2, 2);
    m(0, 0) = excited;
    m(1, 1) = 1.0 - excited;
    return DensityMatrix(m);
}

} // namespace

TEST_CASE("distance measures")
{
    const DensityMatrix a = qubit(0.2), b = qubit(0.4);
    CHECK(distance(a, b, DistanceMeasure::TraceDistance) == doctest::Approx(0.2));
    const double rel = 0.2 * std::log2(0.2 / 0.4) + 0.8 * std::log2(0.8 / 0.6);
    CHECK(distance(a, b, DistanceMeasure::RelativeEntropy) == doctest::Approx(rel));
    const double f = std::pow(std::sqrt(0.2 * 0.4) + std::sqrt(0.8 * 0.6), 2);
    CHECK(distance(a, b, DistanceMeasure::FidelityBased) == doctest::Approx(1 - f));
    for (DistanceMeasure m : kAll) CHECK(distance(a, a, m) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::isinf(distance(qubit(0.3), qubit(0.0), DistanceMeasure::RelativeEntropy)));

    std::mt19937 rng(2);
    for (int k = 0; k < 20; ++k) {
        const DensityMatrix x(random_density(3, rng)), y(random_density(3, rng));
        for (DistanceMeasure m : kAll) CHECK(distance(x, y, m) >= 0.0);
        CHECK(distance(x, y, DistanceMeasure::TraceDistance) <= 1.0 + 1e-12);
        CHECK(distance(x, y, DistanceMeasure::FidelityBased) <= 1.0 + 1e-12);
    }
    CHECK(parse_distance_measure("relent") == DistanceMeasure::RelativeEntropy);
    CHECK(to_string(DistanceMeasure::FidelityBased) == "fidelity");
    CHECK_THROWS_AS(parse_distance_measure("hs"), std::invalid_argument);
}

TEST_CASE("local temperature is exact on thermal states for j up to 4")
{
    TemperatureSearch search;
    search.t_max = 30.0;
    for (int tj = 1; tj <= 8; ++tj) {
        for (double t : {0.3, 1.0, 2.4}) {
            const SpinQuantumNumber j(tj);
            const DensityMatrix rho = thermal_state(j, 1.1, t);
            for (DistanceMeasure m : kAll) {
                CAPTURE(tj);
                CAPTURE(t);
                const auto r = dlt(rho, j, 1.1, m, search);
                CHECK(std::abs(r.temperature - t) < 1e-6);
                CHECK(r.residual < 1e-10);
            }
        }
    }
}

TEST_CASE("trace-distance DLT equals the population temperature on qubits")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> tau(1e-3, 0.499);
    std::uniform_real_distribution<double> field(0.2, 3.0);
    for (int k = 0; k < 200; ++k) {
        const double e = tau(rng), h = field(rng);
        const DensityMatrix rho = qubit(e);
        const double plt = plt_qubit(rho, h);
        TemperatureSearch search;
        search.t_max = 10.0 * std::max(1.0, 2 * plt);
        CHECK(std::abs(dlt(rho, SpinQuantumNumber(1), h, DistanceMeasure::TraceDistance, search).temperature - plt) <
              1e-8);
    }
    CHECK_THROWS_AS(plt_qubit(qubit(0.5), 1.0), std::domain_error);
    CHECK(plt_qubit(qubit(0.0), 1.0) == 0.0);
}

TEST_CASE("hotter thermal-like states read hotter")
{
    // Mix a thermal state with the maximally mixed state: more mixing is hotter for every measure.
    const SpinQuantumNumber j(3);
    const Operator base = thermal_state(j, 1.1, 0.8).matrix();
    const Operator flat = Operator::Identity(4, 4) / 4.0;
    for (DistanceMeasure m : kAll) {
        double previous = 0.0;
        for (double w : {0.0, 0.1, 0.2, 0.4}) {
            const DensityMatrix rho(hermitize((1 - w) * base + w * flat));
            const double t = dlt(rho, j, 1.1, m, {}).temperature;
            CHECK(t > previous);
            previous = t;
        }
    }
}

TEST_CASE("search bracket failures are explicit")
{
    const DensityMatrix hot = thermal_state(SpinQuantumNumber(2), 1.0, 500.0);
    TemperatureSearch search;
    search.t_max = 10.0;
    CHECK_THROWS_AS(dlt(hot, SpinQuantumNumber(2), 1.0, DistanceMeasure::TraceDistance, search), std::runtime_error);
    CHECK_THROWS_AS(dlt(hot, SpinQuantumNumber(1), 1.0, DistanceMeasure::TraceDistance, search), std::invalid_argument);
    CHECK_THROWS_AS(dlt(hot, SpinQuantumNumber(2), -1.0, DistanceMeasure::TraceDistance, search), std::invalid_argument);
}

TEST_CASE("von Neumann entropy and the cooling factor")
{
    CHECK(von_neumann_entropy(qubit(0.5)) == doctest::Approx(1.0));
    CHECK(von_neumann_entropy(qubit(0.0)) == doctest::Approx(0.0));
    const DensityMatrix t = thermal_state(SpinQuantumNumber(4), 1.1, 1.0);
    const EntropyMetrics same = entropy_metrics(t, t);
    CHECK(same.normalized == doctest::Approx(1.0));
    CHECK_THROWS_AS(entropy_metrics(qubit(0.0), t), std::domain_error);
    CHECK(cooling_factor(1.0, 1.0) == 0.0);
    CHECK(cooling_factor(2.0, 1.5) == doctest::Approx(0.25));
    CHECK(cooling_factor(1.0, 1.2) < 0.0);
    CHECK_THROWS_AS(cooling_factor(0.0, 1.0), std::invalid_argument);
}
