// Batch driver for the ordinal partition network persistence pipeline.
//
// Subcommands:
//   simulate   integrate registry systems and export signals + registry.json
//   pipeline   signal -> OPN -> distances -> persistence diagrams, all stages
//   detect     periodic/chaotic separation accuracy table (MDS + SVM)
//   stability  normalized bottleneck distance under additive noise sweeps
//   cycle      cycle-graph max persistence curve (diffusion vs shortest path)
//   tsweep     diffusion diagram statistics as t/diameter varies
//
// Every subcommand accepts --config <json> plus flag overrides and writes a
// manifest.json beside its outputs. Exit code is 0 only when every requested
// item succeeded; failures land in error_summary.json.

#include "cli_config.hpp"

#include <opnph/errors.hpp>
#include <opnph/experiments.hpp>
#include <opnph/io.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace opnph;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> systems;
    int n = -1;
    int tau = -1;
    std::vector<std::string> methods;
    int normalized = -1; // -1 unset, 0 standard, 1 normalized
    double t_rule = -1.0;
    std::vector<std::string> snrs;
    std::vector<std::uint64_t> seeds;
    std::uint64_t seed_count = 0;
    double fs = -1.0;
    double duration = -1.0;
    int workers = -1;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config file");
    cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
    cmd->add_option("--systems", args.systems, "registry system names")->delimiter(',');
    cmd->add_option("--n", args.n, "embedding dimension");
    cmd->add_option("--tau", args.tau, "delay in samples (overrides per-system default)");
    cmd->add_option("--methods", args.methods, "distance methods (supd,swpd,wspd,dd)")
        ->delimiter(',');
    cmd->add_flag(
        "--normalized,!--standard",
        [&args](std::int64_t count) { args.normalized = count > 0 ? 1 : 0; },
        "use max-normalized distance matrices");
    cmd->add_option("--t-rule", args.t_rule, "diffusion steps as a multiple of the diameter");
    cmd->add_option("--snr", args.snrs, "SNR grid in dB ('inf' allowed)")->delimiter(',');
    cmd->add_option("--seeds", args.seeds, "explicit seed list")->delimiter(',');
    cmd->add_option("--seed-count", args.seed_count, "use seeds 1..N");
    cmd->add_option("--fs", args.fs, "sampling rate override (Hz)");
    cmd->add_option("--duration", args.duration, "simulation length override (s)");
    cmd->add_option("--workers", args.workers, "worker pool size");
}

ExperimentConfig build_config(const CommonArgs& args) {
    ExperimentConfig config;
    if (!args.config_path.empty()) config = cli::load_config(args.config_path);
    if (!args.out_dir.empty()) config.out_dir = args.out_dir;
    if (!args.systems.empty()) config.systems = args.systems;
    if (args.n >= 0) config.embedding_dimension = args.n;
    if (args.tau >= 0) config.tau = args.tau;
    if (!args.methods.empty()) {
        config.methods.clear();
        for (const auto& m : args.methods) config.methods.push_back(parse_method(m));
    }
    if (args.normalized >= 0) config.normalized = args.normalized == 1;
    if (args.t_rule > 0) config.t_rule = args.t_rule;
    if (!args.snrs.empty()) {
        config.noise_grid_db.clear();
        for (const auto& s : args.snrs)
            config.noise_grid_db.push_back(
                s == "inf" ? std::numeric_limits<double>::infinity() : std::stod(s));
    }
    if (!args.seeds.empty()) config.seeds = args.seeds;
    if (args.seed_count > 0) {
        config.seeds.clear();
        for (std::uint64_t s = 1; s <= args.seed_count; ++s) config.seeds.push_back(s);
    }
    if (args.fs > 0) config.fs = args.fs;
    if (args.duration > 0) config.duration_s = args.duration;
    if (args.workers >= 0) config.workers = args.workers;
    return config;
}

void write_manifest(const std::string& command, const ExperimentConfig& config) {
    if (config.out_dir.empty()) return;
    io::write_text(config.out_dir / "manifest.json", cli::manifest_json(command, config));
}

int run_simulate(const ExperimentConfig& config) {
    validate(config);
    if (config.systems.empty()) throw ConfigError("simulate: no systems requested");
    if (config.out_dir.empty()) throw ConfigError("simulate: --out directory required");
    std::vector<ItemFailure> failures;
    for (const auto& name : config.systems) {
        for (DynamicState label : {DynamicState::periodic, DynamicState::chaotic}) {
            const std::string item = name + "_" + to_string(label);
            try {
                const SystemSpec spec = find_system(name, label);
                const double fs = config.fs.value_or(spec.default_fs);
                const double duration = config.duration_s.value_or(
                    750.0 * static_cast<double>(config.tau.value_or(spec.default_tau)) / fs);
                Signal signal = integrate(spec, duration, fs, spec.initial_state,
                                          config.seeds.empty() ? 0 : config.seeds.front());
                signal = trim(signal, 0.2);
                io::write_signal_csv(config.out_dir / (item + ".csv"), signal);
            } catch (const std::exception& e) {
                failures.push_back({item, e.what()});
            }
        }
    }
    io::write_registry_json(config.out_dir / "registry.json");
    if (!failures.empty()) {
        io::write_text(config.out_dir / "error_summary.json",
                       cli::error_summary_json(failures));
        for (const auto& f : failures)
            std::cerr << "simulate: " << f.item << ": " << f.message << "\n";
        return 1;
    }
    return 0;
}

int run_pipeline_cmd(const ExperimentConfig& config) {
    const PipelineOutcome outcome = run_pipeline(config);
    std::cout << "pipeline: " << outcome.items.size() << " items completed, "
              << outcome.failures.size() << " failed\n";
    if (!outcome.failures.empty()) {
        if (!config.out_dir.empty())
            io::write_text(config.out_dir / "error_summary.json",
                           cli::error_summary_json(outcome.failures));
        for (const auto& f : outcome.failures)
            std::cerr << "pipeline: " << f.item << ": " << f.message << "\n";
        return 1;
    }
    return 0;
}

int run_detect_cmd(const ExperimentConfig& config) {
    const auto rows = run_state_detection(config);
    std::cout << "method,normalized,mean,std\n";
    for (const auto& row : rows)
        std::cout << to_string(row.method) << ',' << (row.normalized ? 1 : 0) << ','
                  << row.stats.mean << ',' << row.stats.stddev << "\n";
    return 0;
}

int run_stability_cmd(const ExperimentConfig& config) {
    const auto rows = run_stability(config);
    std::cout << "stability: " << rows.size() << " rows\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"persistent homology of weighted ordinal partition networks"};
    app.require_subcommand(1);

    CommonArgs args;
    std::size_t n_min = 3, n_max = 100;
    std::vector<double> ratios{1.0, 2.0, 3.0, 4.0, 5.0};

    auto* simulate = app.add_subcommand("simulate", "integrate systems and export signals");
    add_common_options(simulate, args);
    auto* pipeline = app.add_subcommand("pipeline", "full signal-to-diagram pipeline");
    add_common_options(pipeline, args);
    auto* detect = app.add_subcommand("detect", "dynamic state detection accuracy table");
    add_common_options(detect, args);
    auto* stability = app.add_subcommand("stability", "noise stability sweep");
    add_common_options(stability, args);
    auto* cycle = app.add_subcommand("cycle", "cycle graph persistence curve");
    add_common_options(cycle, args);
    cycle->add_option("--n-min", n_min, "smallest cycle size");
    cycle->add_option("--n-max", n_max, "largest cycle size");
    auto* tsweep = app.add_subcommand("tsweep", "walk-step sweep for the diffusion distance");
    add_common_options(tsweep, args);
    tsweep->add_option("--ratios", ratios, "t/diameter ratios in [1,5]")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig config = build_config(args);
        if (simulate->parsed()) {
            write_manifest("simulate", config);
            return run_simulate(config);
        }
        if (pipeline->parsed()) {
            write_manifest("pipeline", config);
            return run_pipeline_cmd(config);
        }
        if (detect->parsed()) {
            write_manifest("detect", config);
            return run_detect_cmd(config);
        }
        if (stability->parsed()) {
            write_manifest("stability", config);
            return run_stability_cmd(config);
        }
        if (cycle->parsed()) {
            write_manifest("cycle", config);
            const auto rows = run_cycle_analysis(n_min, n_max, config.out_dir);
            std::cout << "cycle: " << rows.size() << " rows\n";
            return 0;
        }
        if (tsweep->parsed()) {
            write_manifest("tsweep", config);
            const auto rows = run_t_sweep(config, ratios);
            std::cout << "tsweep: " << rows.size() << " rows\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (!args.out_dir.empty()) {
            try {
                io::write_text(std::filesystem::path(args.out_dir) / "error_summary.json",
                               cli::error_summary_json({{app.get_subcommands().front()->get_name(),
                                                         e.what()}}));
            } catch (...) {
            }
        }
        return 2;
    }
    return 0;
}
