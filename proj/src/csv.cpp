#include "doa/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace doa {

const char* const kSweepCsvHeader =
    "independent_var,music_rmse,refined_rmse,mean_recon_error,"
    "hard_success_music,hard_success_refined,soft_success_music,soft_success_refined,"
    "resolution_prob_refined,degraded_count,skipped_mu_count";

namespace {

std::string format_double(double value) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

double parse_double(const std::string& field, const char* what) {
    try {
        std::size_t used = 0;
        const double value = std::stod(field, &used);
        if (used != field.size())
            throw std::invalid_argument(field);
        return value;
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("csv: bad ") + what + " value '" + field + "'");
    }
}

long parse_long(const std::string& field, const char* what) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw std::runtime_error(std::string("csv: bad ") + what + " value '" + field + "'");
    return value;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("csv: cannot open '" + path.string() + "' for writing");
    return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("csv: cannot open '" + path.string() + "' for reading");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!line.empty())
            lines.push_back(line);
    }
    return lines;
}

}  // namespace

void emit_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
    if (rows.empty())
        throw std::invalid_argument("emit_csv: no rows to write");

    std::ofstream out = open_for_write(path);
    out << kSweepCsvHeader << '\n';
    for (const SweepRow& row : rows) {
        out << format_double(row.independent_var) << ',' << format_double(row.music_rmse) << ','
            << format_double(row.refined_rmse) << ',' << format_double(row.mean_recon_error) << ','
            << format_double(row.hard_success_music) << ',' << format_double(row.hard_success_refined)
            << ',' << format_double(row.soft_success_music) << ','
            << format_double(row.soft_success_refined) << ','
            << format_double(row.resolution_prob_refined) << ',' << row.degraded_count << ','
            << row.skipped_count << '\n';
    }
    if (!out.flush())
        throw std::runtime_error("emit_csv: write to '" + path.string() + "' failed");
}

std::vector<SweepRow> parse_sweep_csv(const std::filesystem::path& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty() || lines.front() != kSweepCsvHeader)
        throw std::runtime_error("csv: '" + path.string() + "' does not carry the sweep header");

    std::vector<SweepRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_fields(lines[i]);
        if (fields.size() != 11)
            throw std::runtime_error("csv: sweep row with wrong field count in '" + path.string() + "'");
        SweepRow row;
        row.independent_var = parse_double(fields[0], "independent_var");
        row.music_rmse = parse_double(fields[1], "music_rmse");
        row.refined_rmse = parse_double(fields[2], "refined_rmse");
        row.mean_recon_error = parse_double(fields[3], "mean_recon_error");
        row.hard_success_music = parse_double(fields[4], "hard_success_music");
        row.hard_success_refined = parse_double(fields[5], "hard_success_refined");
        row.soft_success_music = parse_double(fields[6], "soft_success_music");
        row.soft_success_refined = parse_double(fields[7], "soft_success_refined");
        row.resolution_prob_refined = parse_double(fields[8], "resolution_prob_refined");
        row.degraded_count = parse_long(fields[9], "degraded_count");
        row.skipped_count = parse_long(fields[10], "skipped_mu_count");
        rows.push_back(row);
    }
    return rows;
}

void emit_records_csv(const std::vector<RecordRow>& rows, const std::filesystem::path& path) {
    if (rows.empty())
        throw std::invalid_argument("emit_records_csv: no rows to write");

    const std::size_t sources = rows.front().record.truth_deg.size();
    std::ofstream out = open_for_write(path);
    out << "trial,method,snr_db,degraded";
    for (std::size_t p = 0; p < sources; ++p)
        out << ",truth_" << p;
    for (std::size_t p = 0; p < sources; ++p)
        out << ",est_" << p;
    out << '\n';

    for (const RecordRow& row : rows) {
        if (row.record.truth_deg.size() != sources || row.record.estimate_deg.size() != sources)
            throw std::invalid_argument("emit_records_csv: rows must share one source count");
        out << row.trial << ',' << row.method << ',' << format_double(row.snr_db) << ','
            << (row.record.degraded ? 1 : 0);
        for (double t : row.record.truth_deg)
            out << ',' << format_double(t);
        for (double e : row.record.estimate_deg)
            out << ',' << format_double(e);
        out << '\n';
    }
    if (!out.flush())
        throw std::runtime_error("emit_records_csv: write to '" + path.string() + "' failed");
}

std::vector<RecordRow> parse_records_csv(const std::filesystem::path& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty())
        throw std::runtime_error("csv: '" + path.string() + "' is empty");

    const auto header = split_fields(lines.front());
    if (header.size() < 6 || header[0] != "trial" || header[1] != "method" || header[2] != "snr_db" ||
        header[3] != "degraded")
        throw std::runtime_error("csv: '" + path.string() + "' does not carry the records header");
    std::size_t sources = 0;
    while (4 + sources < header.size() && header[4 + sources] == "truth_" + std::to_string(sources))
        ++sources;
    if (sources == 0 || header.size() != 4 + 2 * sources)
        throw std::runtime_error("csv: malformed records header in '" + path.string() + "'");

    std::vector<RecordRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_fields(lines[i]);
        if (fields.size() != header.size())
            throw std::runtime_error("csv: records row with wrong field count in '" + path.string() + "'");
        RecordRow row;
        row.trial = parse_long(fields[0], "trial");
        row.method = fields[1];
        row.snr_db = parse_double(fields[2], "snr_db");
        row.record.degraded = parse_long(fields[3], "degraded") != 0;
        for (std::size_t p = 0; p < sources; ++p)
            row.record.truth_deg.push_back(parse_double(fields[4 + p], "truth"));
        for (std::size_t p = 0; p < sources; ++p)
            row.record.estimate_deg.push_back(parse_double(fields[4 + sources + p], "estimate"));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<MetricsRow> recompute_metrics(const std::vector<RecordRow>& rows, const MetricConfig& config) {
    if (rows.empty())
        throw std::invalid_argument("recompute_metrics: no records");

    // Group by (method, snr) preserving first-appearance order.
    std::vector<std::pair<std::string, double>> keys;
    for (const RecordRow& row : rows) {
        const std::pair<std::string, double> key{row.method, row.snr_db};
        bool found = false;
        for (const auto& k : keys)
            if (k == key) {
                found = true;
                break;
            }
        if (!found)
            keys.push_back(key);
    }

    std::vector<MetricsRow> out;
    for (const auto& [method, snr] : keys) {
        std::vector<TrialRecord> records;
        long degraded = 0;
        for (const RecordRow& row : rows)
            if (row.method == method && row.snr_db == snr) {
                records.push_back(row.record);
                degraded += row.record.degraded ? 1 : 0;
            }
        MetricsRow metrics_row;
        metrics_row.method = method;
        metrics_row.snr_db = snr;
        metrics_row.count = static_cast<long>(records.size());
        metrics_row.rmse = rmse(records);
        metrics_row.hard_success = success_rate_hard(records, config);
        metrics_row.soft_success = success_rate_soft(records, config);
        metrics_row.resolution_prob = records.front().truth_deg.size() >= 2
                                          ? resolution_probability(records, {0, 1})
                                          : std::numeric_limits<double>::quiet_NaN();
        metrics_row.degraded_count = degraded;
        out.push_back(std::move(metrics_row));
    }
    return out;
}

void emit_metrics_csv(const std::vector<MetricsRow>& rows, const std::filesystem::path& path) {
    if (rows.empty())
        throw std::invalid_argument("emit_metrics_csv: no rows to write");

    std::ofstream out = open_for_write(path);
    out << "method,snr_db,count,rmse,hard_success,soft_success,resolution_prob,degraded_count\n";
    for (const MetricsRow& row : rows) {
        out << row.method << ',' << format_double(row.snr_db) << ',' << row.count << ','
            << format_double(row.rmse) << ',' << format_double(row.hard_success) << ','
            << format_double(row.soft_success) << ',' << format_double(row.resolution_prob) << ','
            << row.degraded_count << '\n';
    }
    if (!out.flush())
        throw std::runtime_error("emit_metrics_csv: write to '" + path.string() + "' failed");
}

}  // namespace doa
