// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "onebit/harness/config.hpp"

namespace onebit {

/// Reads a JSON config. Missing keys take their defaults; unknown keys and
/// wrongly typed values are reported per field. Returns nullopt when any
/// issue was recorded. Does not run validate().
[[nodiscard]] std::optional<ExperimentConfig> parse_config(const nlohmann::json& doc,
                                                           std::vector<ValidationIssue>& issues);

/// Full config with every field spelled out; parse_config inverts it.
[[nodiscard]] nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Loads a config file, or the config embedded in a run manifest. Runs
/// validate() as well; `issues` is empty iff the result is usable.
[[nodiscard]] std::optional<ExperimentConfig> load_config(const std::filesystem::path& path,
                                                          std::vector<ValidationIssue>& issues);

[[nodiscard]] nlohmann::json issues_to_json(const std::vector<ValidationIssue>& issues);

}  // namespace onebit
