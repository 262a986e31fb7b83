#include "doa/harness.hpp"

#include "doa/array_model.hpp"
#include "doa/covariance.hpp"
#include "doa/music.hpp"
#include "doa/rng.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace doa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

TrialResult run_trial_with_table(const ExperimentConfig& config, double snr_db, int trial_index,
                                 const SteeringTable& table) {
    const Scenario scenario = config.scenario(snr_db);
    const int sources = config.source_count();

    const std::uint64_t seed =
        derive_trial_seed(config.base_seed, static_cast<std::uint64_t>(trial_index));
    const CMatrix snapshots = synthesize_snapshots(scenario, config.geometry, seed);
    const EigenSystem eig = eigendecompose(sample_covariance(snapshots));
    const SubspacePair subspaces = partition_subspaces(eig, sources);

    TrialResult result;
    const PeakPick plain =
        estimate_doa(subspaces.signal_basis * subspaces.signal_basis.adjoint(), table, sources);
    result.music = TrialRecord{config.true_doas_deg, plain.angles_deg, plain.degraded};

    if (config.methods == MethodSet::MusicOnly)
        return result;

    try {
        const SimilarityMatrix similarity = similarity_matrix(eig.eigenvalues);
        const TransformMatrix transform = transform_matrix(similarity, eig.eigenvectors);
        RefinementResult refinement =
            search_mu(config.mu_grid, similarity, transform, config.geometry, table, sources);
        result.refined =
            TrialRecord{config.true_doas_deg, refinement.refined_doas_deg, refinement.best_degraded};
        result.refinement = std::move(refinement);
    } catch (const RankDeficientSimilarity&) {
        result.refined = result.music;
        result.refinement_failed = true;
    } catch (const RefinementFailed&) {
        result.refined = result.music;
        result.refinement_failed = true;
    }
    return result;
}

std::vector<TrialRecord> music_records(const std::vector<TrialResult>& trials) {
    std::vector<TrialRecord> records;
    records.reserve(trials.size());
    for (const TrialResult& t : trials)
        records.push_back(t.music);
    return records;
}

/// Shared portion of a sweep row computed from a set of refined-method
/// records plus the music baseline.
void fill_row(SweepRow& row, const ExperimentConfig& config, const std::vector<TrialRecord>& music,
              const std::vector<TrialRecord>& refined, const std::vector<double>& recon_errors) {
    const bool want_music =
        config.methods == MethodSet::MusicOnly || config.methods == MethodSet::Both;
    const bool want_refined =
        config.methods == MethodSet::RefinedOnly || config.methods == MethodSet::Both;
    const bool pair_defined = config.source_count() >= 2;

    row.music_rmse = kNaN;
    row.hard_success_music = kNaN;
    row.soft_success_music = kNaN;
    if (want_music && !music.empty()) {
        row.music_rmse = rmse(music);
        row.hard_success_music = success_rate_hard(music, config.metric);
        row.soft_success_music = success_rate_soft(music, config.metric);
    }

    row.refined_rmse = kNaN;
    row.hard_success_refined = kNaN;
    row.soft_success_refined = kNaN;
    row.resolution_prob_refined = kNaN;
    row.mean_recon_error = kNaN;
    if (want_refined && !refined.empty()) {
        row.refined_rmse = rmse(refined);
        row.hard_success_refined = success_rate_hard(refined, config.metric);
        row.soft_success_refined = success_rate_soft(refined, config.metric);
        if (pair_defined)
            row.resolution_prob_refined = resolution_probability(refined, {0, 1});
        long degraded = 0;
        for (const TrialRecord& r : refined)
            degraded += r.degraded ? 1 : 0;
        row.degraded_count = degraded;
    }
    if (!recon_errors.empty()) {
        double total = 0.0;
        for (double e : recon_errors)
            total += e;
        row.mean_recon_error = total / static_cast<double>(recon_errors.size());
    }
}

}  // namespace

MethodSet method_set_from_string(const std::string& name) {
    if (name == "plain-music" || name == "music")
        return MethodSet::MusicOnly;
    if (name == "refined")
        return MethodSet::RefinedOnly;
    if (name == "both")
        return MethodSet::Both;
    throw std::invalid_argument("methods: expected plain-music, refined or both, got '" + name + "'");
}

std::string to_string(MethodSet methods) {
    switch (methods) {
        case MethodSet::MusicOnly: return "plain-music";
        case MethodSet::RefinedOnly: return "refined";
        case MethodSet::Both: return "both";
    }
    return "both";
}

void ExperimentConfig::validate() const {
    geometry.validate();
    scenario(snr_list_db.empty() ? 0.0 : snr_list_db.front()).validate(geometry);
    grid.validate();
    mu_grid.validate();
    if (trial_count < 1)
        throw std::invalid_argument("config: trial_count must be positive");
    if (snr_list_db.empty())
        throw std::invalid_argument("config: at least one SNR is required");
    for (double snr : snr_list_db)
        if (!std::isfinite(snr))
            throw std::invalid_argument("config: SNR values must be finite");
    if (!(metric.success_threshold_deg > 0.0))
        throw std::invalid_argument("config: success threshold must be positive");
    if (!(metric.soft_decay_coeff > 0.0))
        throw std::invalid_argument("config: decay coefficient must be positive");
    if (workers < 0)
        throw std::invalid_argument("config: worker count must be nonnegative");
}

Scenario ExperimentConfig::scenario(double snr_db) const {
    Scenario s;
    s.true_doas_deg = true_doas_deg;
    s.snr_db = snr_db;
    s.snapshot_count = snapshot_count;
    s.noiseless = noiseless;
    return s;
}

TrialResult run_trial(const ExperimentConfig& config, int trial_index) {
    return run_trial(config, config.snr_list_db.front(), trial_index);
}

TrialResult run_trial(const ExperimentConfig& config, double snr_db, int trial_index) {
    config.validate();
    if (trial_index < 0 || trial_index >= config.trial_count)
        throw std::invalid_argument("run_trial: trial index out of range");
    const SteeringTable table = tabulate_steering(config.geometry, config.grid);
    return run_trial_with_table(config, snr_db, trial_index, table);
}

std::vector<TrialResult> run_trials(const ExperimentConfig& config, double snr_db) {
    config.validate();
    const SteeringTable table = tabulate_steering(config.geometry, config.grid);

    const std::size_t count = static_cast<std::size_t>(config.trial_count);
    std::vector<TrialResult> results(count);
    std::vector<std::exception_ptr> errors(count);

    unsigned requested = config.workers > 0 ? static_cast<unsigned>(config.workers)
                                            : std::max(1u, std::thread::hardware_concurrency());
    requested = std::min<unsigned>(requested, static_cast<unsigned>(count));

    // Workers claim trial indices from a shared counter; every trial is a
    // pure function of (config, snr, index), so the schedule cannot
    // change any result. Aggregation happens later in index order.
    std::atomic<std::size_t> next{0};
    const auto work = [&]() {
        while (true) {
            const std::size_t index = next.fetch_add(1);
            if (index >= count)
                return;
            try {
                results[index] =
                    run_trial_with_table(config, snr_db, static_cast<int>(index), table);
            } catch (...) {
                errors[index] = std::current_exception();
            }
        }
    };

    if (requested <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(requested);
        for (unsigned w = 0; w < requested; ++w)
            pool.emplace_back(work);
        for (std::thread& t : pool)
            t.join();
    }

    for (const std::exception_ptr& error : errors)
        if (error)
            std::rethrow_exception(error);
    return results;
}

std::vector<SweepRow> aggregate_mu_rows(const ExperimentConfig& config,
                                        const std::vector<TrialResult>& trials) {
    const std::size_t points = config.mu_grid.size();
    std::vector<SweepRow> rows(points);

    const std::vector<TrialRecord> music = music_records(trials);

    for (std::size_t k = 0; k < points; ++k) {
        SweepRow& row = rows[k];
        row.independent_var = config.mu_grid.value(k);

        std::vector<TrialRecord> refined;
        std::vector<double> recon_errors;
        long skipped = 0;
        for (const TrialResult& t : trials) {
            if (!t.refinement.has_value()) {
                ++skipped;  // refined not run or fully degenerate: nothing at this mu
                continue;
            }
            const MuSample& sample = t.refinement->samples[k];
            if (sample.skipped) {
                ++skipped;
                continue;
            }
            refined.push_back(TrialRecord{config.true_doas_deg, sample.doas_deg, sample.degraded_pick});
            recon_errors.push_back(sample.recon_error);
        }

        fill_row(row, config, music, refined, recon_errors);
        row.skipped_count = skipped;
    }
    return rows;
}

SweepRow aggregate_snr_row(const ExperimentConfig& config, double snr_db,
                           const std::vector<TrialResult>& trials) {
    SweepRow row;
    row.independent_var = snr_db;

    const std::vector<TrialRecord> music = music_records(trials);

    std::vector<TrialRecord> refined;
    std::vector<double> recon_errors;
    long skipped = 0;
    for (const TrialResult& t : trials) {
        if (t.refined.has_value())
            refined.push_back(*t.refined);  // best-mu estimate, or the fallback
        if (t.refinement.has_value())
            recon_errors.push_back(t.refinement->best_recon_error);
        else
            ++skipped;  // fell back to the plain estimate, or refined not run
    }

    fill_row(row, config, music, refined, recon_errors);
    row.skipped_count = skipped;
    return row;
}

std::vector<SweepRow> mu_sweep(const ExperimentConfig& config) {
    config.validate();
    if (config.snr_list_db.size() != 1)
        throw std::invalid_argument("mu_sweep: exactly one SNR is required");
    const std::vector<TrialResult> trials = run_trials(config, config.snr_list_db.front());
    return aggregate_mu_rows(config, trials);
}

std::vector<SweepRow> snr_sweep(const ExperimentConfig& config) {
    config.validate();
    std::vector<SweepRow> rows;
    rows.reserve(config.snr_list_db.size());
    for (double snr : config.snr_list_db) {
        const std::vector<TrialResult> trials = run_trials(config, snr);
        rows.push_back(aggregate_snr_row(config, snr, trials));
    }
    return rows;
}

}  // namespace doa
