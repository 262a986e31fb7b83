#include "doa/config.hpp"
#include "doa/csv.hpp"
#include "doa/harness.hpp"
#include "doa/plot.hpp"
#include "doa/rng.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using doa::ExperimentConfig;

/// CLI-side overrides; only values the user actually passed are applied,
/// so the precedence is defaults < config file < flags.
struct Overrides {
    std::optional<std::string> config_path;
    std::optional<int> elements;
    std::optional<double> spacing;
    std::optional<std::string> doas;
    std::optional<std::string> snr;
    std::optional<int> snapshots;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<double> grid_start, grid_stop, grid_step;
    std::optional<double> mu_start, mu_stop, mu_step;
    std::optional<double> delta, kappa;
    std::optional<int> workers;
    bool noiseless = false;
    std::optional<std::string> methods;
    std::string out_path;
    std::optional<std::string> plot_path;
    std::optional<std::string> records_path;
};

void add_common_options(CLI::App* cmd, Overrides& o, bool with_records) {
    cmd->add_option("--config", o.config_path, "config file (key = value lines, or a JSON object)");
    cmd->add_option("--elements", o.elements, "array element count");
    cmd->add_option("--spacing", o.spacing, "element spacing over wavelength");
    cmd->add_option("--doas", o.doas, "true source directions, degrees, comma separated");
    cmd->add_option("--snr", o.snr, "SNR in dB (comma separated list for snr-sweep)");
    cmd->add_option("--snapshots", o.snapshots, "snapshots per trial");
    cmd->add_option("--trials", o.trials, "Monte Carlo trial count");
    cmd->add_option("--seed", o.seed, "base seed");
    cmd->add_option("--grid-start", o.grid_start, "scan grid start, degrees");
    cmd->add_option("--grid-stop", o.grid_stop, "scan grid stop, degrees");
    cmd->add_option("--grid-step", o.grid_step, "scan grid step, degrees");
    cmd->add_option("--mu-start", o.mu_start, "modification factor grid start");
    cmd->add_option("--mu-stop", o.mu_stop, "modification factor grid stop");
    cmd->add_option("--mu-step", o.mu_step, "modification factor grid step");
    cmd->add_option("--delta", o.delta, "success threshold, degrees");
    cmd->add_option("--kappa", o.kappa, "soft success decay coefficient");
    cmd->add_option("--workers", o.workers, "worker threads (0 = one per hardware thread)");
    cmd->add_flag("--noiseless", o.noiseless, "disable the noise term");
    cmd->add_option("--methods", o.methods, "plain-music, refined or both");
    cmd->add_option("--out", o.out_path, "output path (data goes to files, never stdout)")->required();
    cmd->add_option("--plot", o.plot_path, "also write an SVG of the sweep curves");
    if (with_records)
        cmd->add_option("--records", o.records_path, "also write per-trial records as CSV");
}

ExperimentConfig build_config(const Overrides& o) {
    ExperimentConfig config;
    if (o.config_path)
        config = doa::load_config_file(*o.config_path);
    if (o.elements)
        config.geometry.element_count = *o.elements;
    if (o.spacing)
        config.geometry.spacing_over_wavelength = *o.spacing;
    if (o.doas)
        config.true_doas_deg = doa::parse_double_list(*o.doas);
    if (o.snr)
        config.snr_list_db = doa::parse_double_list(*o.snr);
    if (o.snapshots)
        config.snapshot_count = *o.snapshots;
    if (o.trials)
        config.trial_count = *o.trials;
    if (o.seed)
        config.base_seed = *o.seed;
    if (o.grid_start)
        config.grid.start_deg = *o.grid_start;
    if (o.grid_stop)
        config.grid.stop_deg = *o.grid_stop;
    if (o.grid_step)
        config.grid.step_deg = *o.grid_step;
    if (o.mu_start)
        config.mu_grid.start = *o.mu_start;
    if (o.mu_stop)
        config.mu_grid.stop = *o.mu_stop;
    if (o.mu_step)
        config.mu_grid.step = *o.mu_step;
    if (o.delta)
        config.metric.success_threshold_deg = *o.delta;
    if (o.kappa)
        config.metric.soft_decay_coeff = *o.kappa;
    if (o.workers)
        config.workers = *o.workers;
    if (o.noiseless)
        config.noiseless = true;
    if (o.methods)
        config.methods = doa::method_set_from_string(*o.methods);
    config.validate();
    return config;
}

double single_snr(const ExperimentConfig& config) {
    if (config.snr_list_db.size() != 1)
        throw std::invalid_argument("this subcommand needs exactly one SNR value");
    return config.snr_list_db.front();
}

nlohmann::json doas_json(const std::vector<double>& doas) { return nlohmann::json(doas); }

void write_trial_json(const ExperimentConfig& config, int trial_index, const doa::TrialResult& trial,
                      const std::string& path) {
    nlohmann::json dump;
    dump["scenario"] = {
        {"elements", config.geometry.element_count},
        {"spacing_over_wavelength", config.geometry.spacing_over_wavelength},
        {"doas_deg", doas_json(config.true_doas_deg)},
        {"snr_db", config.snr_list_db.front()},
        {"noiseless", config.noiseless},
        {"snapshots", config.snapshot_count},
    };
    dump["base_seed"] = config.base_seed;
    dump["trial_index"] = trial_index;
    dump["derived_seed"] =
        doa::derive_trial_seed(config.base_seed, static_cast<std::uint64_t>(trial_index));
    dump["music"] = {
        {"doas_deg", doas_json(trial.music.estimate_deg)},
        {"degraded", trial.music.degraded},
    };
    if (trial.refined.has_value()) {
        nlohmann::json refined = {
            {"doas_deg", doas_json(trial.refined->estimate_deg)},
            {"degraded", trial.refined->degraded},
            {"fallback", trial.refinement_failed},
        };
        if (trial.refinement.has_value()) {
            const doa::RefinementResult& r = *trial.refinement;
            refined["best_mu"] = r.best_mu;
            refined["best_cost"] = r.best_cost;
            refined["best_recon_error"] = r.best_recon_error;
            nlohmann::json trace = nlohmann::json::array();
            for (const doa::MuSample& s : r.samples) {
                nlohmann::json entry = {{"mu", s.mu}, {"skipped", s.skipped}};
                if (!s.skipped) {
                    entry["cost"] = s.cost;
                    entry["recon_error"] = s.recon_error;
                    entry["doas_deg"] = doas_json(s.doas_deg);
                    entry["degraded"] = s.degraded_pick;
                }
                trace.push_back(std::move(entry));
            }
            refined["mu_trace"] = std::move(trace);
        }
        dump["refined"] = std::move(refined);
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << dump.dump(2) << '\n';
    if (!out.flush())
        throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<doa::RecordRow> collect_records(const std::vector<doa::TrialResult>& trials, double snr_db) {
    std::vector<doa::RecordRow> rows;
    for (std::size_t k = 0; k < trials.size(); ++k) {
        rows.push_back({static_cast<long>(k), "music", snr_db, trials[k].music});
        if (trials[k].refined.has_value())
            rows.push_back({static_cast<long>(k), "refined", snr_db, *trials[k].refined});
    }
    return rows;
}

int run(int argc, char** argv) {
    CLI::App app{"Monte Carlo benchmark for subspace DOA estimation with eigenspace refinement"};
    app.require_subcommand(1);

    Overrides trial_opts, mu_opts, snr_opts;
    int trial_index = 0;

    CLI::App* trial_cmd = app.add_subcommand("trial", "run one trial and dump the full traces as JSON");
    add_common_options(trial_cmd, trial_opts, false);
    trial_cmd->add_option("--trial-index", trial_index, "trial to run");

    CLI::App* mu_cmd = app.add_subcommand("mu-sweep", "per-mu aggregates at one SNR");
    add_common_options(mu_cmd, mu_opts, true);

    CLI::App* snr_cmd = app.add_subcommand("snr-sweep", "per-SNR aggregates (refined = best mu)");
    add_common_options(snr_cmd, snr_opts, true);

    CLI::App* metrics_cmd = app.add_subcommand("metrics", "recompute indexes from a records CSV");
    std::string records_in, metrics_out;
    double metrics_delta = 1.0, metrics_kappa = 1.0;
    metrics_cmd->add_option("records", records_in, "per-trial records CSV")->required();
    metrics_cmd->add_option("--delta", metrics_delta, "success threshold, degrees");
    metrics_cmd->add_option("--kappa", metrics_kappa, "soft success decay coefficient");
    metrics_cmd->add_option("--out", metrics_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);  // prints help or the parse error
        return code == 0 ? 0 : 1;
    }

    if (trial_cmd->parsed()) {
        const ExperimentConfig config = build_config(trial_opts);
        const double snr = single_snr(config);
        std::cerr << "running trial " << trial_index << " at "
                  << (config.noiseless ? "noiseless" : (std::to_string(snr) + " dB")) << "\n";
        const doa::TrialResult trial = doa::run_trial(config, snr, trial_index);
        write_trial_json(config, trial_index, trial, trial_opts.out_path);
    } else if (mu_cmd->parsed()) {
        const ExperimentConfig config = build_config(mu_opts);
        const double snr = single_snr(config);
        std::cerr << "mu sweep: " << config.trial_count << " trials at "
                  << (config.noiseless ? "noiseless" : (std::to_string(snr) + " dB")) << ", "
                  << config.mu_grid.size() << " grid points\n";
        const auto trials = doa::run_trials(config, snr);
        const auto rows = doa::aggregate_mu_rows(config, trials);
        doa::emit_csv(rows, mu_opts.out_path);
        if (mu_opts.plot_path)
            doa::emit_plot(rows, *mu_opts.plot_path, "modification factor");
        if (mu_opts.records_path)
            doa::emit_records_csv(collect_records(trials, snr), *mu_opts.records_path);
    } else if (snr_cmd->parsed()) {
        const ExperimentConfig config = build_config(snr_opts);
        std::vector<doa::SweepRow> rows;
        std::vector<doa::RecordRow> records;
        for (double snr : config.snr_list_db) {
            std::cerr << "snr sweep: " << config.trial_count << " trials at " << snr << " dB\n";
            const auto trials = doa::run_trials(config, snr);
            rows.push_back(doa::aggregate_snr_row(config, snr, trials));
            if (snr_opts.records_path) {
                const auto batch = collect_records(trials, snr);
                records.insert(records.end(), batch.begin(), batch.end());
            }
        }
        doa::emit_csv(rows, snr_opts.out_path);
        if (snr_opts.plot_path)
            doa::emit_plot(rows, *snr_opts.plot_path, "SNR (dB)");
        if (snr_opts.records_path)
            doa::emit_records_csv(records, *snr_opts.records_path);
    } else if (metrics_cmd->parsed()) {
        const auto records = doa::parse_records_csv(records_in);
        const doa::MetricConfig metric{metrics_delta, metrics_kappa};
        doa::emit_metrics_csv(doa::recompute_metrics(records, metric), metrics_out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& error) {
        std::cerr << "config error: " << error.what() << "\n";
        return 1;
    } catch (const std::domain_error& error) {
        std::cerr << "config error: " << error.what() << "\n";
        return 1;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    }
}
