#include "cli_config.hpp"

#include <opnph/errors.hpp>
#include <opnph/graphdist.hpp>

#include <json.hpp>

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace opnph::cli {

using nlohmann::json;

namespace {

double parse_snr(const json& v) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw ConfigError("config: noise_grid_db entries must be numbers or \"inf\"");
    }
    if (v.is_null()) return std::numeric_limits<double>::infinity();
    return v.get<double>();
}

} // namespace

ExperimentConfig config_from_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");

    static const std::set<std::string> known{
        "systems", "n",        "tau",   "tau_overrides", "methods", "normalized",
        "t_rule",  "noise_grid_db", "seeds", "seed_count",    "seed_start", "fs",
        "duration_s", "out",   "workers"};
    for (const auto& [key, _] : doc.items())
        if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");

    ExperimentConfig config;
    if (doc.contains("systems"))
        config.systems = doc["systems"].get<std::vector<std::string>>();
    if (doc.contains("n")) config.embedding_dimension = doc["n"].get<int>();
    if (doc.contains("tau")) config.tau = doc["tau"].get<int>();
    if (doc.contains("tau_overrides"))
        for (const auto& [name, tau] : doc["tau_overrides"].items())
            config.tau_overrides[name] = tau.get<int>();
    if (doc.contains("methods")) {
        config.methods.clear();
        for (const auto& m : doc["methods"])
            config.methods.push_back(parse_method(m.get<std::string>()));
    }
    if (doc.contains("normalized")) config.normalized = doc["normalized"].get<bool>();
    if (doc.contains("t_rule")) config.t_rule = doc["t_rule"].get<double>();
    if (doc.contains("noise_grid_db"))
        for (const auto& v : doc["noise_grid_db"]) config.noise_grid_db.push_back(parse_snr(v));
    if (doc.contains("seeds"))
        config.seeds = doc["seeds"].get<std::vector<std::uint64_t>>();
    if (doc.contains("seed_count")) {
        if (doc.contains("seeds"))
            throw ConfigError("config: give either seeds or seed_count, not both");
        const auto count = doc["seed_count"].get<std::uint64_t>();
        const auto start = doc.contains("seed_start") ? doc["seed_start"].get<std::uint64_t>()
                                                      : std::uint64_t{1};
        for (std::uint64_t s = 0; s < count; ++s) config.seeds.push_back(start + s);
    }
    if (doc.contains("fs")) config.fs = doc["fs"].get<double>();
    if (doc.contains("duration_s")) config.duration_s = doc["duration_s"].get<double>();
    if (doc.contains("out")) config.out_dir = doc["out"].get<std::string>();
    if (doc.contains("workers")) config.workers = doc["workers"].get<int>();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return config_from_json(buffer.str());
}

std::string config_to_json(const ExperimentConfig& config) {
    json doc;
    doc["systems"] = config.systems;
    doc["n"] = config.embedding_dimension;
    if (config.tau) doc["tau"] = *config.tau;
    if (!config.tau_overrides.empty()) doc["tau_overrides"] = config.tau_overrides;
    std::vector<std::string> methods;
    for (auto m : config.methods) methods.push_back(to_string(m));
    doc["methods"] = methods;
    if (config.normalized) doc["normalized"] = *config.normalized;
    doc["t_rule"] = config.t_rule;
    if (!config.noise_grid_db.empty()) {
        json grid = json::array();
        for (double v : config.noise_grid_db) {
            if (std::isinf(v))
                grid.push_back("inf");
            else
                grid.push_back(v);
        }
        doc["noise_grid_db"] = grid;
    }
    doc["seeds"] = config.seeds;
    if (config.fs) doc["fs"] = *config.fs;
    if (config.duration_s) doc["duration_s"] = *config.duration_s;
    doc["out"] = config.out_dir.string();
    return doc.dump(2);
}

std::string config_hash(const ExperimentConfig& config) {
    const std::string canonical = config_to_json(config);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

std::string manifest_json(const std::string& command, const ExperimentConfig& config) {
    json doc;
    doc["tool"] = "opnph";
    doc["version"] = "0.1.0";
    doc["command"] = command;
    doc["config_hash"] = config_hash(config);
    doc["config"] = json::parse(config_to_json(config));
    return doc.dump(2) + "\n";
}

std::string error_summary_json(const std::vector<ItemFailure>& failures) {
    json doc;
    doc["errors"] = json::array();
    for (const auto& f : failures)
        doc["errors"].push_back({{"item", f.item}, {"message", f.message}});
    return doc.dump(2) + "\n";
}

} // namespace opnph::cli
