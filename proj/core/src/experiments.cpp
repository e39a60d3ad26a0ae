#include "opnph/experiments.hpp"

#include "opnph/errors.hpp"
#include "opnph/io.hpp"
#include "opnph/opn.hpp"
#include "opnph/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

namespace opnph {

namespace {

namespace fs = std::filesystem;

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    unsigned n_threads = workers > 0 ? static_cast<unsigned>(workers)
                                     : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(count));
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

int tau_for(const ExperimentConfig& config, const SystemSpec& spec) {
    if (auto it = config.tau_overrides.find(spec.name); it != config.tau_overrides.end())
        return it->second;
    if (config.tau) return *config.tau;
    return spec.default_tau;
}

Signal simulate_for(const ExperimentConfig& config, const SystemSpec& spec,
                    std::uint64_t seed) {
    const double fs = config.fs.value_or(spec.default_fs);
    const double duration =
        config.duration_s.value_or(750.0 * static_cast<double>(tau_for(config, spec)) / fs);
    Signal full = integrate(spec, duration, fs, spec.initial_state, seed);
    return trim(full, 0.2);
}

int diffusion_steps(const ExperimentConfig& config, int diameter) {
    return std::max(1, static_cast<int>(std::ceil(config.t_rule * diameter)));
}

struct StageResult {
    PermutationSequence sequence;
    WeightedNetwork network;
    int diameter = 0;
    std::map<DistanceMethod, DistanceMatrix> distances;
    std::map<DistanceMethod, PersistenceDiagram> diagrams;
};

// signal -> sequence -> network -> per-method distance -> diagram.
StageResult pipeline_stages(const Signal& signal, int n, int tau,
                            const std::vector<DistanceMethod>& methods, bool normalized,
                            const ExperimentConfig& config) {
    StageResult stage;
    stage.sequence = embed(signal, n, tau);
    stage.network = build_network(stage.sequence);
    stage.diameter = unweighted_diameter(stage.network);
    for (DistanceMethod method : methods) {
        DistanceMatrix dist =
            compute_distance(stage.network, method,
                             method == DistanceMethod::dd
                                 ? std::optional<int>(diffusion_steps(config, stage.diameter))
                                 : std::nullopt);
        if (normalized) dist = normalize(dist);
        stage.diagrams.emplace(method, rips_persistence(dist));
        stage.distances.emplace(method, std::move(dist));
    }
    return stage;
}

std::string item_name(const std::string& system, DynamicState label) {
    return system + "_" + to_string(label);
}

constexpr DynamicState kBothLabels[] = {DynamicState::periodic, DynamicState::chaotic};

std::uint64_t base_seed(const ExperimentConfig& config) {
    return config.seeds.empty() ? 0 : config.seeds.front();
}

std::uint64_t derived_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    SplitMix64 rng(base + 0x9e3779b97f4a7c15ULL * (a * 4096 + b + 1));
    return rng.next();
}

} // namespace

void validate(const ExperimentConfig& config) {
    if (config.embedding_dimension < 2)
        throw ConfigError("config: embedding dimension must be >= 2");
    if (!(config.t_rule > 0.0)) throw ConfigError("config: t multiplier must be > 0");
    if (config.methods.empty()) throw ConfigError("config: distance method list is empty");
    for (std::size_t i = 0; i < config.methods.size(); ++i)
        for (std::size_t j = i + 1; j < config.methods.size(); ++j)
            if (config.methods[i] == config.methods[j])
                throw ConfigError("config: duplicate distance method " +
                                  to_string(config.methods[i]));
    if (config.tau && *config.tau < 1) throw ConfigError("config: tau must be >= 1");
    for (const auto& [name, tau] : config.tau_overrides) {
        if (tau < 1) throw ConfigError("config: tau override for " + name + " must be >= 1");
    }
    for (const auto& name : config.systems)
        find_system(name, DynamicState::periodic); // throws NotFoundError with the registry
}

PipelineOutcome run_pipeline(const ExperimentConfig& config) {
    validate(config);
    if (config.systems.empty()) throw ConfigError("config: no systems requested");

    struct Task {
        std::string system;
        DynamicState label;
    };
    std::vector<Task> tasks;
    for (const auto& system : config.systems)
        for (DynamicState label : kBothLabels) tasks.push_back({system, label});

    PipelineOutcome outcome;
    std::vector<std::optional<PipelineItem>> slots(tasks.size());
    std::vector<std::optional<ItemFailure>> failures(tasks.size());
    const bool normalized = config.normalized.value_or(false);

    parallel_for(tasks.size(), config.workers, [&](std::size_t idx) {
        const auto& task = tasks[idx];
        const std::string name = item_name(task.system, task.label);
        try {
            const SystemSpec spec = find_system(task.system, task.label);
            const int tau = tau_for(config, spec);
            const Signal signal = simulate_for(config, spec, base_seed(config));
            const StageResult stage = pipeline_stages(
                signal, config.embedding_dimension, tau, config.methods, normalized, config);

            if (!config.out_dir.empty()) {
                const fs::path dir = config.out_dir / name;
                io::write_signal_csv(dir / "signal.csv", signal);
                io::write_sequence_csv(dir / "sequence.csv", stage.sequence);
                io::write_edge_list_csv(dir / "network_edges.csv", stage.network);
                io::write_vertex_table_csv(dir / "network_vertices.csv", stage.network);
                const auto labels = stage.network.vertex_labels();
                for (const auto& [method, dist] : stage.distances) {
                    const std::string suffix =
                        to_string(method) + (normalized ? std::string("_norm") : std::string());
                    io::write_matrix_csv(dir / ("dist_" + suffix + ".csv"), dist.values, labels);
                    io::write_diagram_csv(dir / ("diagram_" + suffix + ".csv"),
                                          stage.diagrams.at(method));
                }
            }

            PipelineItem item;
            item.system = task.system;
            item.label = task.label;
            item.vertex_count = stage.network.vertex_count();
            item.diameter = stage.diameter;
            item.diagrams = stage.diagrams;
            slots[idx] = std::move(item);
        } catch (const std::exception& e) {
            failures[idx] = ItemFailure{name, e.what()};
        }
    });

    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i]) outcome.items.push_back(std::move(*slots[i]));
        if (failures[i]) outcome.failures.push_back(std::move(*failures[i]));
    }

    if (!config.out_dir.empty()) {
        std::ostringstream summary;
        summary << "system,label,method,normalized,vertices,diameter,t,max_l1,pairs,"
                   "significant_pairs\n";
        for (const auto& item : outcome.items) {
            for (const auto& [method, diagram] : item.diagrams) {
                summary << item.system << ',' << to_string(item.label) << ','
                        << to_string(method) << ',' << (normalized ? 1 : 0) << ','
                        << item.vertex_count << ',' << item.diameter << ','
                        << (method == DistanceMethod::dd
                                ? diffusion_steps(config, item.diameter)
                                : 0)
                        << ',' << io::format_double(max_lifetime(diagram, 1)) << ','
                        << count_pairs(diagram, 1) << ',' << significant_pairs(diagram, 1)
                        << '\n';
            }
        }
        io::write_text(config.out_dir / "pipeline_summary.csv", summary.str());
    }
    return outcome;
}

namespace {

// Diagrams for every (system, label) without file output; throws on the
// first failure (lowest task index) for deterministic error reporting.
std::vector<PipelineItem> compute_items(const ExperimentConfig& config, bool normalized) {
    struct Task {
        std::string system;
        DynamicState label;
    };
    std::vector<Task> tasks;
    for (const auto& system : config.systems)
        for (DynamicState label : kBothLabels) tasks.push_back({system, label});

    std::vector<std::optional<PipelineItem>> slots(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    parallel_for(tasks.size(), config.workers, [&](std::size_t idx) {
        try {
            const auto& task = tasks[idx];
            const SystemSpec spec = find_system(task.system, task.label);
            const Signal signal = simulate_for(config, spec, base_seed(config));
            const StageResult stage =
                pipeline_stages(signal, config.embedding_dimension, tau_for(config, spec),
                                config.methods, normalized, config);
            PipelineItem item;
            item.system = task.system;
            item.label = task.label;
            item.vertex_count = stage.network.vertex_count();
            item.diameter = stage.diameter;
            item.diagrams = stage.diagrams;
            slots[idx] = std::move(item);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    });
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);

    std::vector<PipelineItem> items;
    items.reserve(slots.size());
    for (auto& slot : slots) items.push_back(std::move(*slot));
    return items;
}

} // namespace

std::vector<AccuracyRow> run_state_detection(const ExperimentConfig& config) {
    validate(config);
    if (config.systems.size() < 2)
        throw ConfigError("detect: need at least 2 systems with both labels");
    if (config.seeds.empty()) throw ConfigError("detect: seed list is empty");

    std::vector<bool> variants;
    if (config.normalized)
        variants = {*config.normalized};
    else
        variants = {false, true};

    std::vector<AccuracyRow> rows;
    for (bool normalized : variants) {
        const std::vector<PipelineItem> items = compute_items(config, normalized);
        std::vector<DynamicState> labels;
        std::vector<std::string> names;
        for (const auto& item : items) {
            labels.push_back(item.label);
            names.push_back(item_name(item.system, item.label));
        }
        for (DistanceMethod method : config.methods) {
            std::vector<PersistenceDiagram> diagrams;
            for (const auto& item : items) diagrams.push_back(item.diagrams.at(method));
            DiagramDistanceMatrix bd = pairwise_bottleneck(diagrams, labels);
            bd.names = names;

            AccuracyRow row;
            row.method = method;
            row.normalized = normalized;
            row.stats = separation_accuracy(bd, config.seeds);
            rows.push_back(row);

            if (!config.out_dir.empty()) {
                const std::string suffix =
                    to_string(method) + (normalized ? "_norm" : "_std");
                io::write_matrix_csv(config.out_dir / ("bottleneck_" + suffix + ".csv"),
                                     bd.values, names);
                io::write_accuracy_json(config.out_dir / ("accuracy_" + suffix + ".json"),
                                        to_string(method), normalized, row.stats,
                                        config.seeds);
                io::write_embedding_csv(config.out_dir / ("embedding_" + suffix + ".csv"),
                                        mds_embed(bd, 2, config.seeds.front()), names);
            }
        }
    }

    if (!config.out_dir.empty()) {
        std::ostringstream table;
        table << "method,normalized,mean,std\n";
        for (const auto& row : rows)
            table << to_string(row.method) << ',' << (row.normalized ? 1 : 0) << ','
                  << io::format_double(row.stats.mean) << ','
                  << io::format_double(row.stats.stddev) << '\n';
        io::write_text(config.out_dir / "accuracy_table.csv", table.str());
    }
    return rows;
}

std::vector<StabilityRow> run_stability(const ExperimentConfig& config) {
    validate(config);
    if (config.systems.empty()) throw ConfigError("stability: no systems requested");
    if (config.noise_grid_db.empty()) throw ConfigError("stability: noise grid is empty");

    const bool normalized = config.normalized.value_or(false);
    std::vector<std::vector<StabilityRow>> per_system(config.systems.size());

    parallel_for(config.systems.size(), config.workers, [&](std::size_t s_idx) {
        const auto& system = config.systems[s_idx];
        const SystemSpec spec = find_system(system, DynamicState::periodic);
        const int tau = tau_for(config, spec);
        const Signal raw = simulate_for(config, spec, base_seed(config));

        const Signal reference = add_noise(raw, {});
        const StageResult ref_stage = pipeline_stages(
            reference, config.embedding_dimension, tau, config.methods, normalized, config);

        for (std::size_t g = 0; g < config.noise_grid_db.size(); ++g) {
            const double snr_db = config.noise_grid_db[g];
            NoiseSpec noise;
            noise.snr_db = snr_db;
            noise.seed = derived_seed(base_seed(config), s_idx, g);
            const Signal noisy = add_noise(raw, noise);
            const StageResult stage = pipeline_stages(
                noisy, config.embedding_dimension, tau, config.methods, normalized, config);
            for (DistanceMethod method : config.methods) {
                StabilityRow row;
                row.system = system;
                row.method = method;
                row.snr_db = snr_db;
                row.d_star_b = normalized_bottleneck(ref_stage.diagrams.at(method),
                                                     stage.diagrams.at(method));
                per_system[s_idx].push_back(row);
            }
        }
    });

    std::vector<StabilityRow> rows;
    for (auto& block : per_system)
        for (auto& row : block) rows.push_back(std::move(row));

    if (!config.out_dir.empty()) {
        std::ostringstream out;
        out << "system,method,snr_db,d_star_b\n";
        for (const auto& row : rows)
            out << row.system << ',' << to_string(row.method) << ','
                << io::format_double(row.snr_db) << ',' << io::format_double(row.d_star_b)
                << '\n';
        io::write_text(config.out_dir / "stability.csv", out.str());
    }
    return rows;
}

std::vector<CycleRow> run_cycle_analysis(std::size_t n_min, std::size_t n_max,
                                         const std::filesystem::path& out_dir) {
    if (n_min < 3 || n_min > n_max)
        throw ConfigError("cycle: need 3 <= n_min <= n_max");

    std::vector<CycleRow> rows(n_max - n_min + 1);
    parallel_for(rows.size(), 0, [&](std::size_t idx) {
        const std::size_t n = n_min + idx;
        const WeightedNetwork cycle = WeightedNetwork::cycle(n);
        CycleRow row;
        row.n = n;
        row.supd_max_l1 = max_lifetime(rips_persistence(shortest_unweighted_path(cycle)), 1);
        row.dd_max_l1 =
            max_lifetime(rips_persistence(diffusion_distance(cycle, default_t(cycle))), 1);
        rows[idx] = row;
    });

    if (!out_dir.empty()) {
        std::ostringstream out;
        out << "n,dd_max_l1,supd_max_l1\n";
        for (const auto& row : rows)
            out << row.n << ',' << io::format_double(row.dd_max_l1) << ','
                << io::format_double(row.supd_max_l1) << '\n';
        io::write_text(out_dir / "cycle.csv", out.str());
    }
    return rows;
}

std::vector<TSweepRow> run_t_sweep(const ExperimentConfig& config,
                                   const std::vector<double>& ratios) {
    validate(config);
    if (config.systems.empty()) throw ConfigError("tsweep: no systems requested");
    if (ratios.empty()) throw ConfigError("tsweep: ratio list is empty");
    for (double r : ratios)
        if (r < 1.0 || r > 5.0)
            throw ConfigError("tsweep: ratios must lie in [1, 5]");

    std::vector<double> sorted_ratios = ratios;
    std::sort(sorted_ratios.begin(), sorted_ratios.end());

    std::vector<std::vector<TSweepRow>> per_system(config.systems.size());
    parallel_for(config.systems.size(), config.workers, [&](std::size_t s_idx) {
        const auto& system = config.systems[s_idx];
        const SystemSpec spec = find_system(system, DynamicState::periodic);
        const Signal signal = simulate_for(config, spec, base_seed(config));
        const PermutationSequence seq =
            embed(signal, config.embedding_dimension, tau_for(config, spec));
        const WeightedNetwork net = build_network(seq);
        const int diameter = unweighted_diameter(net);
        for (double ratio : sorted_ratios) {
            const int t = std::max(1, static_cast<int>(std::ceil(ratio * diameter)));
            const PersistenceDiagram diagram =
                rips_persistence(diffusion_distance(net, t));
            TSweepRow row;
            row.system = system;
            row.ratio = ratio;
            row.t = t;
            row.max_l1 = max_lifetime(diagram, 1);
            row.pair_count = static_cast<double>(count_pairs(diagram, 1));
            per_system[s_idx].push_back(row);
        }
    });

    std::vector<TSweepRow> rows;
    for (auto& block : per_system)
        for (auto& row : block) rows.push_back(std::move(row));

    // Cross-system means per ratio.
    for (std::size_t r = 0; r < sorted_ratios.size(); ++r) {
        TSweepRow mean;
        mean.system = "mean";
        mean.ratio = sorted_ratios[r];
        for (const auto& block : per_system) {
            mean.max_l1 += block[r].max_l1;
            mean.pair_count += block[r].pair_count;
        }
        mean.max_l1 /= static_cast<double>(per_system.size());
        mean.pair_count /= static_cast<double>(per_system.size());
        rows.push_back(mean);
    }

    if (!config.out_dir.empty()) {
        std::ostringstream out;
        out << "system,ratio,t,max_l1,pair_count\n";
        for (const auto& row : rows)
            out << row.system << ',' << io::format_double(row.ratio) << ',' << row.t << ','
                << io::format_double(row.max_l1) << ',' << io::format_double(row.pair_count)
                << '\n';
        io::write_text(config.out_dir / "tsweep.csv", out.str());
    }
    return rows;
}

} // namespace opnph
