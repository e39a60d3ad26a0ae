#pragma once

#include "opnph/analysis.hpp"
#include "opnph/diagmetric.hpp"
#include "opnph/dynsys.hpp"
#include "opnph/graphdist.hpp"
#include "opnph/persistence.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace opnph {

/// Batch configuration shared by the experiment drivers. Simulation follows
/// the registry defaults (750 * tau / fs seconds at default_fs, last fifth
/// kept) unless fs/duration_s override them.
struct ExperimentConfig {
    std::vector<std::string> systems;
    int embedding_dimension = 6;
    std::optional<int> tau;                  // overrides every system
    std::map<std::string, int> tau_overrides; // per-system override
    std::vector<DistanceMethod> methods{DistanceMethod::supd, DistanceMethod::swpd,
                                        DistanceMethod::wspd, DistanceMethod::dd};
    std::optional<bool> normalized; // pipeline/stability: unset = standard;
                                    // detect: unset = both variants
    double t_rule = 2.0;            // diffusion steps t = ceil(t_rule * diameter)
    std::vector<double> noise_grid_db; // may contain +inf
    std::vector<std::uint64_t> seeds;
    std::optional<double> fs;
    std::optional<double> duration_s;
    std::filesystem::path out_dir;
    int workers = 0; // 0 = hardware concurrency
};

/// Throws ConfigError / NotFoundError when the configuration cannot run.
void validate(const ExperimentConfig& config);

struct PipelineItem {
    std::string system;
    DynamicState label = DynamicState::periodic;
    std::size_t vertex_count = 0;
    int diameter = 0;
    std::map<DistanceMethod, PersistenceDiagram> diagrams;
};

struct ItemFailure {
    std::string item;
    std::string message;
};

struct PipelineOutcome {
    std::vector<PipelineItem> items; // (system, label) in config order
    std::vector<ItemFailure> failures;
};

/// simulate -> trim -> embed -> network -> distances (normalized when asked)
/// -> diagrams, writing every intermediate under out_dir/<system>_<label>/.
/// Per-system failures are collected, not thrown.
PipelineOutcome run_pipeline(const ExperimentConfig& config);

struct AccuracyRow {
    DistanceMethod method = DistanceMethod::supd;
    bool normalized = false;
    AccuracyStats stats;
};

/// Per method (and normalization variant): pairwise bottleneck matrix over
/// the D1 diagrams of every (system, label), then the MDS + SVM separation
/// accuracy over the config seeds. Emits accuracy_table.csv plus per-variant
/// JSON reports, bottleneck matrices and example embeddings.
std::vector<AccuracyRow> run_state_detection(const ExperimentConfig& config);

struct StabilityRow {
    std::string system;
    DistanceMethod method = DistanceMethod::supd;
    double snr_db = 0.0;
    double d_star_b = 0.0;
};

/// Normalized bottleneck distance from each periodic system's noise-free D1
/// to its noise-contaminated D1 across the SNR grid. Emits stability.csv.
std::vector<StabilityRow> run_stability(const ExperimentConfig& config);

struct CycleRow {
    std::size_t n = 0;
    double dd_max_l1 = 0.0;
    double supd_max_l1 = 0.0;
};

/// Max D1 lifetime of the uniform-weight cycle graph under the diffusion
/// distance at t = 2 * diameter and under the unweighted shortest path, for
/// every n in [n_min, n_max]. Emits cycle.csv when out_dir is nonempty.
std::vector<CycleRow> run_cycle_analysis(std::size_t n_min, std::size_t n_max,
                                         const std::filesystem::path& out_dir = {});

struct TSweepRow {
    std::string system; // "mean" rows aggregate across systems
    double ratio = 0.0;
    int t = 0;
    double max_l1 = 0.0;
    double pair_count = 0.0;
};

/// Diffusion-distance diagram of each periodic system at t = ceil(ratio * d)
/// for every requested ratio in [1, 5], plus cross-system means. Emits
/// tsweep.csv.
std::vector<TSweepRow> run_t_sweep(const ExperimentConfig& config,
                                   const std::vector<double>& ratios);

} // namespace opnph
