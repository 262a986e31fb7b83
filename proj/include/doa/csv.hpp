#pragma once

#include "doa/harness.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace doa {

/// Fixed sweep CSV schema, in emission order.
extern const char* const kSweepCsvHeader;

/// Writes sweep rows with the fixed header. Floats carry 12 significant
/// digits; NaN cells are written literally as "nan".
void emit_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

std::vector<SweepRow> parse_sweep_csv(const std::filesystem::path& path);

/// Flat per-trial record, one row per (trial, method) pair.
struct RecordRow {
    long trial = 0;
    std::string method;  // "music" or "refined"
    double snr_db = 0.0;
    TrialRecord record;
};

void emit_records_csv(const std::vector<RecordRow>& rows, const std::filesystem::path& path);
std::vector<RecordRow> parse_records_csv(const std::filesystem::path& path);

/// Recomputed metric indexes of one (method, snr) group of records.
struct MetricsRow {
    std::string method;
    double snr_db = 0.0;
    long count = 0;
    double rmse = 0.0;
    double hard_success = 0.0;
    double soft_success = 0.0;
    double resolution_prob = 0.0;
    long degraded_count = 0;
};

std::vector<MetricsRow> recompute_metrics(const std::vector<RecordRow>& rows, const MetricConfig& config);
void emit_metrics_csv(const std::vector<MetricsRow>& rows, const std::filesystem::path& path);

}  // namespace doa
