#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "qfridge/presets.hpp"
#include "qfridge/results_io.hpp"

using namespace qfridge;

namespace {

ExperimentConfig small_sweep()
{
    return parse_config(R"(
[meta]
name = small
[system]
spins = 1/2, 1/2
fields = 1.1, 1.3
interaction = xx
J = 0.09
[bath]
temperatures = 1.0, 1.1
[evolution]
dt = 0.05
convergence_tol = 1e-10
[thermometry]
measures = trace, relent
[sweep]
axis1 = j: 1/2, 1
axis2 = J: 0.02, 0.09
)");
}

} // namespace

TEST_CASE("run_point on the two-qubit reference point")
{
    ExperimentConfig c = derive_point(small_sweep(), 1);  // j = 1/2, J = 0.09
    const ResultRow row = run_point(c, 1);
    REQUIRE(row.converged);
    CHECK(row.error.empty());
    CHECK(row.eta.value() == doctest::Approx(0.0059).epsilon(0.05));
    CHECK(row.cooling.value());
    CHECK(classify_cooling(row));
    CHECK(row.q1_positive.value());
    CHECK(row.heat[2] == std::nullopt);
    CHECK(row.t_steady_for(0, DistanceMeasure::FidelityBased) == std::nullopt);
}

TEST_CASE("stationary family row")
{
    const ResultRow row = run_point(derive_point(load_preset("stationary"), 0));
    REQUIRE(row.converged);
    CHECK(std::abs(row.eta.value()) < 1e-9);
    CHECK(std::abs(row.heat[0].value()) < 1e-12);
    CHECK_FALSE(classify_cooling(row));
}

TEST_CASE("failures land in the row")
{
    ExperimentConfig c = derive_point(small_sweep(), 0);
    c.evolution.t_max = 0.5;
    const ResultRow row = run_point(c);
    CHECK_FALSE(row.converged);
    CHECK(row.error.find("not reached") != std::string::npos);
    ExperimentConfig bad = c;
    bad.system.sites[0].field = -1.0;
    const ResultRow r2 = run_point(bad);
    CHECK_FALSE(r2.converged);
    CHECK_FALSE(r2.error.empty());
}

TEST_CASE("sweeps are ordered and independent of the thread count")
{
    const ExperimentConfig c = small_sweep();
    const auto serial = sweep_grid(c, 1);
    const auto parallel = sweep_grid(c, 3);
    REQUIRE(serial.size() == 4);
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i].index == i);
    CHECK(to_csv(serial) == to_csv(parallel));
    CHECK(serial == parallel);

    ExperimentConfig single = derive_point(c, 2);
    const auto one = sweep_grid(single, 2);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == run_point(single, 0));
}

TEST_CASE("CSV round trip and schema")
{
    const ExperimentConfig c = small_sweep();
    auto rows = sweep_grid(c, 1);
    rows[0].error = "quoted, \"text\"\nacross lines";
    const std::string path = "harness_roundtrip.csv";
    write_results(rows, path, c);
    const auto back = read_results(path);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(back[i] == rows[i]);

    std::ifstream in(path, std::ios::binary);
    std::string header;
    std::getline(in, header);
    CHECK(header.find('\r') == std::string::npos);
    CHECK(header.rfind("index,name,", 0) == 0);
    std::ifstream meta(path + ".meta.json");
    std::string meta_text((std::istreambuf_iterator<char>(meta)), std::istreambuf_iterator<char>());
    CHECK(meta_text.find(config_hash(c.source_text)) != std::string::npos);
    CHECK(meta_text.find(kToolVersion) != std::string::npos);
    std::remove(path.c_str());
    std::remove((path + ".meta.json").c_str());

    // Same columns whatever the preset produces.
    const auto cols = result_columns();
    CHECK(to_csv({ResultRow{}}).substr(0, to_csv({}).size()) == to_csv({}));
    CHECK(std::count(cols.begin(), cols.end(), "T3_s_fidelity") == 1);
    CHECK(config_hash("abc") == config_hash("abc"));
    CHECK(config_hash("abc") != config_hash("abd"));
}

TEST_CASE("identical configs give identical bytes")
{
    const ExperimentConfig c = small_sweep();
    CHECK(to_csv(sweep_grid(c, 2)) == to_csv(sweep_grid(c, 1)));
}

TEST_CASE("thread resolution honours the environment")
{
    unsetenv("QFRIDGE_THREADS");
    CHECK(resolve_threads(3u) == 3);
    setenv("QFRIDGE_THREADS", "2", 1);
    CHECK(resolve_threads(5u) == 2);
    setenv("QFRIDGE_THREADS", "zero", 1);
    CHECK_THROWS_AS(resolve_threads(5u), std::invalid_argument);
    unsetenv("QFRIDGE_THREADS");
}
