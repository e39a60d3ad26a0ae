#include <doctest.h>

#include <opnph/errors.hpp>
#include <opnph/experiments.hpp>
#include <opnph/io.hpp>

#include "../tools/cli_config.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace opnph;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("opnph_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Small, fast Lorenz-only configuration.
ExperimentConfig tiny_config() {
    ExperimentConfig config;
    config.systems = {"lorenz"};
    config.embedding_dimension = 4;
    config.tau = 17;
    config.fs = 100.0;
    config.duration_s = 30.0;
    config.methods = {DistanceMethod::supd, DistanceMethod::dd};
    config.seeds = {1};
    return config;
}

} // namespace

TEST_CASE("config json round trip") {
    const std::string text = R"({
        "systems": ["lorenz", "rossler"],
        "n": 6,
        "tau": 17,
        "methods": ["supd", "dd"],
        "normalized": true,
        "t_rule": 2.0,
        "noise_grid_db": ["inf", 40, 20],
        "seed_count": 3,
        "fs": 100.0,
        "out": "results"
    })";
    const ExperimentConfig config = cli::config_from_json(text);
    CHECK(config.systems == std::vector<std::string>{"lorenz", "rossler"});
    CHECK(config.embedding_dimension == 6);
    CHECK(config.tau == 17);
    CHECK(config.methods == std::vector<DistanceMethod>{DistanceMethod::supd, DistanceMethod::dd});
    CHECK(config.normalized == true);
    REQUIRE(config.noise_grid_db.size() == 3);
    CHECK(std::isinf(config.noise_grid_db[0]));
    CHECK(config.noise_grid_db[2] == 20.0);
    CHECK(config.seeds == std::vector<std::uint64_t>{1, 2, 3});
    CHECK(config.out_dir == fs::path("results"));

    // Hash is stable across identical configs.
    CHECK(cli::config_hash(config) == cli::config_hash(cli::config_from_json(text)));
}

TEST_CASE("config validation failures") {
    CHECK_THROWS_AS(cli::config_from_json("{\"bogus\": 1}"), ConfigError);
    CHECK_THROWS_AS(cli::config_from_json("not json"), ConfigError);

    ExperimentConfig config = tiny_config();
    config.methods.clear();
    CHECK_THROWS_AS(validate(config), ConfigError);

    config = tiny_config();
    config.systems = {"unknown_system"};
    try {
        validate(config);
        FAIL("expected NotFoundError");
    } catch (const NotFoundError& e) {
        const std::string what = e.what();
        CHECK(what.find("lorenz") != std::string::npos); // lists the registry
    }

    config = tiny_config();
    config.embedding_dimension = 1;
    CHECK_THROWS_AS(validate(config), ConfigError);
}

TEST_CASE("pipeline writes every stage and is byte-stable") {
    ExperimentConfig config = tiny_config();
    config.out_dir = temp_dir("pipeline_a");
    const PipelineOutcome outcome = run_pipeline(config);
    CHECK(outcome.failures.empty());
    REQUIRE(outcome.items.size() == 2); // periodic + chaotic

    const fs::path item_dir = config.out_dir / "lorenz_periodic";
    for (const char* name : {"signal.csv", "sequence.csv", "network_edges.csv",
                             "network_vertices.csv", "dist_supd.csv", "dist_dd.csv",
                             "diagram_supd.csv", "diagram_dd.csv"}) {
        CHECK(fs::exists(item_dir / name));
    }
    CHECK(fs::exists(config.out_dir / "pipeline_summary.csv"));

    // The written stages re-enter the pipeline exactly.
    const Matrix restored = io::read_matrix_csv(item_dir / "dist_dd.csv");
    const auto diagram = rips_persistence(restored);
    const auto reference = io::read_diagram_csv(item_dir / "diagram_dd.csv");
    CHECK(diagram.pairs().size() == reference.pairs().size());

    const WeightedNetwork net = io::read_edge_list_csv(item_dir / "network_edges.csv");
    const Matrix dist = io::read_matrix_csv(item_dir / "dist_supd.csv");
    const DistanceMatrix recomputed = shortest_unweighted_path(net);
    REQUIRE(recomputed.values.rows() == dist.rows());
    for (std::size_t i = 0; i < dist.rows(); ++i)
        for (std::size_t j = 0; j < dist.cols(); ++j)
            CHECK(recomputed.values(i, j) == dist(i, j));

    const Signal replayed = io::read_signal_csv(item_dir / "signal.csv");
    CHECK(replayed.samples.size() == 600); // ceil(0.2 * 30s * 100Hz)

    ExperimentConfig again = config;
    again.out_dir = temp_dir("pipeline_b");
    run_pipeline(again);
    for (const char* name : {"signal.csv", "dist_supd.csv", "diagram_dd.csv"}) {
        CHECK(slurp(item_dir / name) ==
              slurp(again.out_dir / "lorenz_periodic" / name));
    }
    CHECK(slurp(config.out_dir / "pipeline_summary.csv") ==
          slurp(again.out_dir / "pipeline_summary.csv"));
}

TEST_CASE("pipeline collects per-item failures and continues") {
    ExperimentConfig config = tiny_config();
    config.duration_s = 0.5; // 50 samples: too short for tau = 17, n = 4
    const PipelineOutcome outcome = run_pipeline(config);
    CHECK(outcome.items.empty());
    CHECK(outcome.failures.size() == 2);
    CHECK(outcome.failures[0].item == "lorenz_periodic");
}

TEST_CASE("cycle analysis rows") {
    const auto rows = run_cycle_analysis(6, 6);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].n == 6);
    CHECK(rows[0].supd_max_l1 == 1.0);
    CHECK(rows[0].dd_max_l1 > 0.0);
    CHECK_THROWS_AS(run_cycle_analysis(2, 10), ConfigError);
    CHECK_THROWS_AS(run_cycle_analysis(9, 3), ConfigError);
}

TEST_CASE("t sweep validates ratios and appends means") {
    ExperimentConfig config = tiny_config();
    CHECK_THROWS_AS(run_t_sweep(config, {0.5}), ConfigError);
    CHECK_THROWS_AS(run_t_sweep(config, {}), ConfigError);
    const auto rows = run_t_sweep(config, {2.0});
    REQUIRE(rows.size() == 2); // one system + the mean row
    CHECK(rows[0].system == "lorenz");
    CHECK(rows[1].system == "mean");
    CHECK(rows[0].t >= 1);
    CHECK(rows[1].max_l1 == rows[0].max_l1); // mean of one system
}

TEST_CASE("stability grid shape and noise-free zero") {
    ExperimentConfig config = tiny_config();
    config.noise_grid_db = {std::numeric_limits<double>::infinity(), 30.0};
    const auto rows = run_stability(config);
    REQUIRE(rows.size() == config.noise_grid_db.size() * config.methods.size());
    for (const auto& row : rows) {
        if (std::isinf(row.snr_db)) CHECK(row.d_star_b == 0.0);
        CHECK(row.d_star_b >= 0.0);
    }
    ExperimentConfig empty_grid = tiny_config();
    CHECK_THROWS_AS(run_stability(empty_grid), ConfigError);
}

TEST_CASE("detect requires enough systems and seeds") {
    ExperimentConfig config = tiny_config();
    CHECK_THROWS_AS(run_state_detection(config), ConfigError); // single system
}

TEST_CASE("accuracy report json round-trips through a parser") {
    const fs::path dir = temp_dir("accuracy_json");
    AccuracyStats stats;
    stats.mean = 0.9375;
    stats.stddev = 0.03125;
    io::write_accuracy_json(dir / "report.json", "dd", true, stats, {1, 2, 3});
    const std::string text = slurp(dir / "report.json");
    const auto doc = nlohmann::json::parse(text);
    CHECK(doc["method"] == "dd");
    CHECK(doc["normalized"] == true);
    CHECK(doc["mean"] == 0.9375);
    CHECK(doc["std"] == 0.03125);
    CHECK(doc["seeds"] == std::vector<int>{1, 2, 3});
}

TEST_CASE("manifest and error summaries serialize") {
    ExperimentConfig config = tiny_config();
    const std::string manifest = cli::manifest_json("pipeline", config);
    CHECK(manifest.find("\"command\": \"pipeline\"") != std::string::npos);
    CHECK(manifest.find("config_hash") != std::string::npos);

    const std::string summary =
        cli::error_summary_json({{"lorenz_periodic", "boom"}});
    CHECK(summary.find("lorenz_periodic") != std::string::npos);
    CHECK(summary.find("boom") != std::string::npos);
}
