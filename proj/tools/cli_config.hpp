#pragma once

#include <opnph/experiments.hpp>

#include <filesystem>
#include <string>

namespace opnph::cli {

/// Parse an ExperimentConfig from a JSON document. Unknown keys are rejected.
/// "noise_grid_db" accepts numbers or the string "inf"; "seeds" is either an
/// explicit list or generated from "seed_count" (+ optional "seed_start",
/// default 1).
ExperimentConfig config_from_json(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical re-serialization of a config (sorted keys, stable formatting).
std::string config_to_json(const ExperimentConfig& config);

/// FNV-1a over the canonical serialization, as a hex string.
std::string config_hash(const ExperimentConfig& config);

/// manifest.json content: tool, version, command, config hash and the config.
std::string manifest_json(const std::string& command, const ExperimentConfig& config);

/// error_summary.json content for failed items.
std::string error_summary_json(const std::vector<ItemFailure>& failures);

} // namespace opnph::cli
