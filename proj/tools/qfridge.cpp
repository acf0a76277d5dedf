// qfridge.cpp — Command-line runner for configured and preset experiments

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qfridge/presets.hpp"
#include "qfridge/results_io.hpp"

using namespace qfridge;

namespace {

struct Overrides {
    std::string out;
    std::string mode;
    std::string measure;
    std::string steady_state;
    unsigned threads = 0;
};

void add_overrides(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--out", o.out, "CSV output path (default: <name>.csv or [output] path)");
    cmd->add_option("--mode", o.mode, "Override the QME mode")->check(CLI::IsMember({"local", "global"}));
    cmd->add_option("--measure", o.measure, "Use a single distance measure")
        ->check(CLI::IsMember({"trace", "relent", "fidelity"}));
    cmd->add_option("--steady-state", o.steady_state, "Override the steady-state method")
        ->check(CLI::IsMember({"integrate", "nullspace"}));
    cmd->add_option("--threads", o.threads, "Worker threads (QFRIDGE_THREADS takes precedence)")
        ->check(CLI::PositiveNumber);
}

int execute(ExperimentConfig config, const Overrides& o)
{
    if (!o.mode.empty()) config.mode = o.mode == "global" ? QmeMode::Global : QmeMode::Local;
    if (!o.steady_state.empty()) {
        config.method = o.steady_state == "nullspace" ? SteadyStateMethod::Nullspace : SteadyStateMethod::Integrate;
    }
    if (!o.measure.empty()) config.measures = {parse_distance_measure(o.measure)};
    config.validate();
    for (const std::string& w : config.baths.warnings()) std::cerr << "warning: " << w << '\n';

    const unsigned threads = resolve_threads(o.threads ? std::optional<unsigned>(o.threads) : std::nullopt);
    const std::vector<ResultRow> rows = sweep_grid(config, threads);

    std::string path = o.out;
    if (path.empty()) path = config.output_path.empty() ? config.name + ".csv" : config.output_path;
    write_results(rows, path, config);

    std::size_t failed = 0;
    for (const ResultRow& r : rows) {
        if (!r.converged) {
            ++failed;
            std::cerr << "point " << r.index << ": " << (r.error.empty() ? "not converged" : r.error) << '\n';
        }
    }
    std::cerr << rows.size() << " point(s) written to " << path;
    if (failed) std::cerr << ", " << failed << " unconverged";
    std::cerr << '\n';
    return failed ? 1 : 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Steady-state spin refrigerator simulations"};
    app.require_subcommand(1);

    Overrides run_o, sweep_o, preset_o;
    std::string run_path, sweep_path, preset_name;

    auto* run = app.add_subcommand("run", "Run every point of a configuration file");
    run->add_option("config", run_path, "Configuration file")->required()->check(CLI::ExistingFile);
    add_overrides(run, run_o);

    auto* sweep = app.add_subcommand("sweep", "Run a configuration that defines a [sweep] section");
    sweep->add_option("config", sweep_path, "Configuration file")->required()->check(CLI::ExistingFile);
    add_overrides(sweep, sweep_o);

    auto* preset = app.add_subcommand("preset", "Run a built-in preset");
    preset->add_option("name", preset_name, "Preset name (see list-presets)")->required();
    add_overrides(preset, preset_o);

    auto* list = app.add_subcommand("list-presets", "List built-in presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const Preset& p : presets()) std::printf("%-20s %s\n", p.name.c_str(), p.description.c_str());
            return 0;
        }
        if (run->parsed()) return execute(load_config(run_path), run_o);
        if (sweep->parsed()) {
            ExperimentConfig config = load_config(sweep_path);
            if (!config.sweep) throw ConfigError(sweep_path + ": no [sweep] section");
            return execute(std::move(config), sweep_o);
        }
        if (preset->parsed()) return execute(load_preset(preset_name), preset_o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
