#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "oltr/harness.hpp"

namespace oltr::cli {

/// Experiment configuration file (JSON). Schema, all keys optional unless noted:
///
///   model          "cascade" | "pbm"                        (default "cascade")
///   position_bias  [p_1, ..., p_K]                           (required for pbm)
///   ranker         "cascade-ucb1" | "pbm-ucb"                (default follows model)
///   attack         "none" | "cascade-ofa" | "pbm-ofa" | "cascade-atq" | "pbm-atq"
///   profile        "<builtin name>" | {"builtin": name} | {"file": path} | {"w": [...]}
///   K, T, alpha, runs, master_seed, curve_points
///   targets        [item ids]  target set S in Λ order       (required with an attack)
///   w_m | epsilon  attack parameter                           (required with an attack)
///   atq_budget     explicit ATQ budget C
///
/// Relative profile file paths resolve against `base_dir`.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

/// Reads and parses a config file. Throws IoError / ValidationError.
nlohmann::json read_config_document(const std::filesystem::path& path);

/// Shallow merge: every key in `overrides` replaces the one in `base`.
void apply_overrides(nlohmann::json& base, const nlohmann::json& overrides);

/// Fully resolved configuration (profile inlined as a w vector).
nlohmann::json config_to_json(const ExperimentConfig& config);

}  // namespace oltr::cli
