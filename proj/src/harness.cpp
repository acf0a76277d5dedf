// harness.cpp — Single-point runner and the parallel sweep driver

#include "qfridge/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

namespace qfridge {

namespace {

std::string interaction_name(const Interaction& interaction)
{
    if (const auto* xyz = std::get_if<XyzInteraction>(&interaction)) {
        if (xyz->gamma == 0.0 && xyz->delta == 0.0) return "xx";
        if (xyz->gamma == 0.0) return "xxz";
        return "xyz";
    }
    if (std::holds_alternative<BilinearBiquadraticInteraction>(interaction)) return "bb";
    return "mixed_xx";
}

void fill_parameters(ResultRow& row, const ExperimentConfig& c)
{
    row.name = c.name;
    row.interaction = interaction_name(c.system.interaction);
    row.mode = c.mode == QmeMode::Global ? "global" : "local";
    row.method = c.method == SteadyStateMethod::Nullspace ? "nullspace" : "integrate";
    row.measure = std::string(to_string(c.measures.at(0)));
    for (std::size_t r = 0; r < c.system.sites.size() && r < kMaxSites; ++r) {
        row.spin[r] = c.system.sites[r].spin.value();
        row.field[r] = c.system.sites[r].field;
        if (r < c.baths.temperatures.size()) row.t_initial[r] = c.baths.temperatures[r];
    }
    row.coupling = c.system.coupling();
    if (const auto* xyz = std::get_if<XyzInteraction>(&c.system.interaction)) {
        row.gamma = xyz->gamma;
        row.delta = xyz->delta;
    }
    if (const auto* bb = std::get_if<BilinearBiquadraticInteraction>(&c.system.interaction)) row.phi = bb->phi;
    if (const auto* flat = std::get_if<FlatCoupling>(&c.baths.coupling)) row.rate = flat->rate;
    if (const auto* ohmic = std::get_if<OhmicCoupling>(&c.baths.coupling)) row.alpha = ohmic->alpha.at(0);
}

void append_error(ResultRow& row, const std::string& message)
{
    if (!row.error.empty()) row.error += "; ";
    row.error += message;
}

void evaluate(ResultRow& row, const ExperimentConfig& c)
{
    c.validate();
    if (c.system.sites.size() > kMaxSites) throw std::invalid_argument("at most three sites are supported");
    const Hamiltonian ham = build_hamiltonian(c.system);
    const DissipatorSet set =
        c.mode == QmeMode::Global ? global_lindblad_set(c.system, c.baths, ham) : local_lindblad_set(c.system, c.baths);
    const DensityMatrix rho0 = initial_product_state(c.system, c.baths);
    const std::vector<int> dims = c.system.dims();

    Operator steady;
    if (c.method == SteadyStateMethod::Nullspace) {
        const NullspaceSteadyState ns = nullspace_steady_state(ham.system, set);
        steady = ns.state;
        row.residual = ns.residual;
        row.converged = true;
    } else {
        EvolutionConfig evo = c.evolution;
        evo.record_reduced_states = false;
        const auto [ss, trajectory] = evolve_to_steady(rho0, ham, set, evo, dims);
        steady = ss.state;
        row.residual = ss.residual;
        row.steady_time = ss.time;
        row.converged = ss.converged;
        if (!ss.converged) append_error(row, "steady state not reached by t_max");
    }
    const DensityMatrix rho_s{hermitize(steady)};

    const TemperatureSearch search = c.effective_search();
    std::vector<DensityMatrix> reduced;
    for (std::size_t r = 0; r < c.system.sites.size(); ++r) {
        reduced.push_back(partial_trace(rho_s, r, dims));
        for (DistanceMeasure m : c.measures) {
            try {
                const auto result = dlt(reduced[r], c.system.sites[r].spin, c.system.sites[r].field, m, search);
                row.t_steady[r][measure_index(m)] = result.temperature;
            } catch (const std::exception& ex) {
                append_error(row, "T" + std::to_string(r + 1) + "_s_" + std::string(to_string(m)) + ": " + ex.what());
            }
        }
    }

    try {
        const EntropyMetrics em = entropy_metrics(partial_trace(rho0, 0, dims), reduced[0]);
        row.entropy_normalized = em.normalized;
    } catch (const std::exception& ex) {
        append_error(row, std::string("S_N: ") + ex.what());
    }

    const ThermoReport report = thermo_report(rho_s.matrix(), ham, set, c.baths.temperatures,
                                              c.effective_heat_convention());
    for (std::size_t r = 0; r < report.heat_currents.size(); ++r) row.heat[r] = report.heat_currents[r];
    row.work = report.work;
    row.entropy_rate = report.entropy_rate;
    row.entropy_production = report.entropy_production;
    row.q1_positive = report.flags.q1_positive;
    row.q2_negative = report.flags.q2_negative;
    row.w_positive = report.flags.w_positive;
    row.sigma_nonneg = report.flags.sigma_nonneg;

    if (const auto t1 = row.primary_t1()) row.eta = cooling_factor(c.baths.temperatures[0], *t1);
    if (row.converged && (row.t_steady_for(0, DistanceMeasure::TraceDistance) || row.primary_t1())) {
        row.cooling = classify_cooling(row);
    }
}

} // namespace

std::size_t measure_index(DistanceMeasure m)
{
    switch (m) {
    case DistanceMeasure::TraceDistance: return 0;
    case DistanceMeasure::RelativeEntropy: return 1;
    case DistanceMeasure::FidelityBased: return 2;
    }
    return 0;
}

std::optional<double> ResultRow::t_steady_for(std::size_t site, DistanceMeasure m) const
{
    return t_steady.at(site)[measure_index(m)];
}

std::optional<double> ResultRow::primary_t1() const
{
    if (measure.empty()) return std::nullopt;
    return t_steady[0][measure_index(parse_distance_measure(measure))];
}

bool ResultRow::operator==(const ResultRow& o) const
{
    return index == o.index && name == o.name && interaction == o.interaction && mode == o.mode &&
           method == o.method && measure == o.measure && spin == o.spin && field == o.field && t_initial == o.t_initial &&
           coupling == o.coupling && gamma == o.gamma && delta == o.delta && phi == o.phi && rate == o.rate &&
           alpha == o.alpha && t_steady == o.t_steady && entropy_normalized == o.entropy_normalized &&
           heat == o.heat && work == o.work && entropy_rate == o.entropy_rate &&
           entropy_production == o.entropy_production && eta == o.eta && converged == o.converged &&
           residual == o.residual && steady_time == o.steady_time && q1_positive == o.q1_positive &&
           q2_negative == o.q2_negative && w_positive == o.w_positive && sigma_nonneg == o.sigma_nonneg &&
           cooling == o.cooling && error == o.error;
}

ResultRow run_point(const ExperimentConfig& config, std::size_t index)
{
    const auto start = std::chrono::steady_clock::now();
    ResultRow row;
    row.index = index;
    try {
        fill_parameters(row, config);
        evaluate(row, config);
    } catch (const std::exception& ex) {
        row.converged = false;
        append_error(row, ex.what());
    }
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

bool classify_cooling(const ResultRow& row)
{
    const auto t0 = row.t_initial[0];
    auto ts = row.t_steady_for(0, DistanceMeasure::TraceDistance);
    if (!ts) ts = row.primary_t1();
    if (!t0 || !ts) return false;
    return *t0 - *ts >= kCoolingThreshold;
}

unsigned resolve_threads(std::optional<unsigned> requested)
{
    if (const char* env = std::getenv("QFRIDGE_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
        throw std::invalid_argument("QFRIDGE_THREADS must be a positive integer");
    }
    if (requested && *requested > 0) return *requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ResultRow> sweep_grid(const ExperimentConfig& config, unsigned threads)
{
    const std::size_t n = config.sweep ? config.sweep->point_count() : 1;
    std::vector<ResultRow> rows(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            ResultRow row;
            try {
                row = run_point(derive_point(config, i), i);
            } catch (const std::exception& ex) {
                row.index = i;
                row.error = ex.what();
            }
            rows[i] = std::move(row);
        }
    };
    const unsigned pool = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (pool == 1) {
        worker();
        return rows;
    }
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < pool; ++t) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
    return rows;
}

} // namespace qfridge
