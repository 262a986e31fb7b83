#pragma once

#include "doa/harness.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace doa {

/// Raw key/value view of a config file. Flat `key = value` lines with
/// `#` comments, or a JSON object when the file starts with `{`.
/// List-valued keys (doas, snr) take comma-separated values or JSON
/// arrays.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Applies recognized keys onto a config. Unknown keys raise
/// std::invalid_argument. See README for the key list.
void apply_config_entries(ExperimentConfig& config, const std::map<std::string, std::string>& entries);

ExperimentConfig load_config_file(const std::filesystem::path& path);

std::vector<double> parse_double_list(const std::string& text);

}  // namespace doa
