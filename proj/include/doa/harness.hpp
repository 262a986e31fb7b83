#pragma once

#include "doa/metrics.hpp"
#include "doa/refinement.hpp"
#include "doa/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace doa {

enum class MethodSet {
    MusicOnly,
    RefinedOnly,
    Both,
};

MethodSet method_set_from_string(const std::string& name);
std::string to_string(MethodSet methods);

/// Full description of a Monte Carlo experiment. Defaults mirror the
/// benchmark scenario: 8-element half-wavelength ULA, sources at
/// 15/30/45 degrees, 50 snapshots, 0.1-degree scan, mu in [0,5].
struct ExperimentConfig {
    ArrayGeometry geometry{8, 0.5};
    std::vector<double> true_doas_deg{15.0, 30.0, 45.0};
    int snapshot_count = 50;
    int trial_count = 200;
    std::uint64_t base_seed = 1;
    AngularGrid grid{-89.9, 89.9, 0.1};
    MuGrid mu_grid{0.0, 5.0, 0.1};
    std::vector<double> snr_list_db{-18.0};
    bool noiseless = false;
    MetricConfig metric{};
    MethodSet methods = MethodSet::Both;
    int workers = 0;  // 0 = one per hardware thread

    int source_count() const { return static_cast<int>(true_doas_deg.size()); }
    void validate() const;
    Scenario scenario(double snr_db) const;
};

/// Outcome of one trial. `refined` is absent when the refined method was
/// not requested; when refinement degenerates it falls back to the plain
/// estimate and `refinement_failed` is set (with no refinement traces).
struct TrialResult {
    TrialRecord music;
    std::optional<TrialRecord> refined;
    bool refinement_failed = false;
    std::optional<RefinementResult> refinement;
};

/// Runs trial `trial_index` at the config's single SNR (or noiseless).
/// Pure function of (config, snr, trial_index): identical inputs give
/// identical outputs regardless of scheduling.
TrialResult run_trial(const ExperimentConfig& config, int trial_index);
TrialResult run_trial(const ExperimentConfig& config, double snr_db, int trial_index);

/// All trials at one SNR, distributed over the configured workers.
/// Results are returned in trial order.
std::vector<TrialResult> run_trials(const ExperimentConfig& config, double snr_db);

/// One aggregate row of a sweep (shared schema for both sweeps).
/// For a mu sweep the refined columns describe the estimates produced at
/// that mu; skipped_count counts trials that produced nothing there (the
/// whole row is NaN when all of them did). For an SNR sweep the refined
/// columns describe the best-mu estimates and skipped_count counts
/// trials that fell back to the plain estimate.
struct SweepRow {
    double independent_var = 0.0;
    double music_rmse = 0.0;
    double refined_rmse = 0.0;
    double mean_recon_error = 0.0;
    double hard_success_music = 0.0;
    double hard_success_refined = 0.0;
    double soft_success_music = 0.0;
    double soft_success_refined = 0.0;
    double resolution_prob_refined = 0.0;
    long degraded_count = 0;
    long skipped_count = 0;
};

/// Aggregation helpers, exposed so per-trial results can be re-reduced
/// and checked against the sweep output.
std::vector<SweepRow> aggregate_mu_rows(const ExperimentConfig& config,
                                        const std::vector<TrialResult>& trials);
SweepRow aggregate_snr_row(const ExperimentConfig& config, double snr_db,
                           const std::vector<TrialResult>& trials);

/// Per-mu aggregates at the config's single SNR (one row per mu grid
/// point, skipped markers included).
std::vector<SweepRow> mu_sweep(const ExperimentConfig& config);

/// Per-SNR aggregates over config.snr_list_db (refined = best-mu DOAs).
std::vector<SweepRow> snr_sweep(const ExperimentConfig& config);

}  // namespace doa
