#include "doa/config.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace doa {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return {};
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

double parse_double_or_throw(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' needs a number, got '" + value + "'");
    }
}

long parse_long_or_throw(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const long parsed = std::stol(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' needs an integer, got '" + value + "'");
    }
}

bool parse_bool_or_throw(const std::string& value, const std::string& key) {
    std::string lower = value;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "true" || lower == "1" || lower == "yes" || lower == "on")
        return true;
    if (lower == "false" || lower == "0" || lower == "no" || lower == "off")
        return false;
    throw std::invalid_argument("config: key '" + key + "' needs a boolean, got '" + value + "'");
}

std::map<std::string, std::string> entries_from_json(const std::string& text,
                                                     const std::filesystem::path& path) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& error) {
        throw std::invalid_argument("config: cannot parse '" + path.string() + "': " + error.what());
    }
    if (!parsed.is_object())
        throw std::invalid_argument("config: '" + path.string() + "' must hold a JSON object");

    std::map<std::string, std::string> entries;
    for (const auto& [key, value] : parsed.items()) {
        if (value.is_string()) {
            entries[key] = value.get<std::string>();
        } else if (value.is_array()) {
            std::ostringstream joined;
            bool first = true;
            for (const auto& item : value) {
                if (!first)
                    joined << ',';
                first = false;
                if (item.is_string())
                    joined << item.get<std::string>();
                else
                    joined << item.dump();
            }
            entries[key] = joined.str();
        } else {
            entries[key] = value.dump();
        }
    }
    return entries;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw std::invalid_argument("config: empty entry in list '" + text + "'");
        values.push_back(parse_double_or_throw(item, "list"));
    }
    if (values.empty())
        throw std::invalid_argument("config: empty list");
    return values;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("config: cannot open '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    const std::string stripped = trim(text);
    if (!stripped.empty() && stripped.front() == '{')
        return entries_from_json(text, path);

    std::map<std::string, std::string> entries;
    std::istringstream lines(text);
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(lines, line)) {
        ++line_number;
        const auto comment = line.find('#');
        if (comment != std::string::npos)
            line = line.substr(0, comment);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: '" + path.string() + "' line " +
                                        std::to_string(line_number) + " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: '" + path.string() + "' line " +
                                        std::to_string(line_number) + " has an empty key");
        entries[key] = value;
    }
    return entries;
}

void apply_config_entries(ExperimentConfig& config, const std::map<std::string, std::string>& entries) {
    for (const auto& [key, value] : entries) {
        if (key == "elements") {
            config.geometry.element_count = static_cast<int>(parse_long_or_throw(value, key));
        } else if (key == "spacing") {
            config.geometry.spacing_over_wavelength = parse_double_or_throw(value, key);
        } else if (key == "doas") {
            config.true_doas_deg = parse_double_list(value);
        } else if (key == "snr") {
            config.snr_list_db = parse_double_list(value);
        } else if (key == "snapshots") {
            config.snapshot_count = static_cast<int>(parse_long_or_throw(value, key));
        } else if (key == "trials") {
            config.trial_count = static_cast<int>(parse_long_or_throw(value, key));
        } else if (key == "seed") {
            config.base_seed = static_cast<std::uint64_t>(parse_long_or_throw(value, key));
        } else if (key == "grid_start") {
            config.grid.start_deg = parse_double_or_throw(value, key);
        } else if (key == "grid_stop") {
            config.grid.stop_deg = parse_double_or_throw(value, key);
        } else if (key == "grid_step") {
            config.grid.step_deg = parse_double_or_throw(value, key);
        } else if (key == "mu_start") {
            config.mu_grid.start = parse_double_or_throw(value, key);
        } else if (key == "mu_stop") {
            config.mu_grid.stop = parse_double_or_throw(value, key);
        } else if (key == "mu_step") {
            config.mu_grid.step = parse_double_or_throw(value, key);
        } else if (key == "delta") {
            config.metric.success_threshold_deg = parse_double_or_throw(value, key);
        } else if (key == "kappa") {
            config.metric.soft_decay_coeff = parse_double_or_throw(value, key);
        } else if (key == "workers") {
            config.workers = static_cast<int>(parse_long_or_throw(value, key));
        } else if (key == "noiseless") {
            config.noiseless = parse_bool_or_throw(value, key);
        } else if (key == "methods") {
            config.methods = method_set_from_string(value);
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
    ExperimentConfig config;
    apply_config_entries(config, read_config_file(path));
    return config;
}

}  // namespace doa
