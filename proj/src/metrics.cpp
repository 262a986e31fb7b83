#include "doa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace doa {

namespace {

void check_records(std::span<const TrialRecord> records) {
    if (records.empty())
        throw std::domain_error("metrics: record list must be nonempty");
    const std::size_t p = records.front().truth_deg.size();
    if (p == 0)
        throw std::domain_error("metrics: records must carry at least one source");
    for (const TrialRecord& r : records)
        if (r.truth_deg.size() != p || r.estimate_deg.size() != p)
            throw std::domain_error("metrics: records must share one source count");
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

std::vector<std::pair<double, double>> pair_estimates(std::span<const double> truth,
                                                      std::span<const double> estimate) {
    if (truth.size() != estimate.size())
        throw std::invalid_argument("pair_estimates: length mismatch");

    std::vector<double> t(truth.begin(), truth.end());
    std::vector<double> e(estimate.begin(), estimate.end());
    std::sort(t.begin(), t.end());
    std::sort(e.begin(), e.end());

    std::vector<std::pair<double, double>> pairs(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        pairs[i] = {t[i], e[i]};
    return pairs;
}

double rmse(std::span<const TrialRecord> records) {
    check_records(records);

    double total = 0.0;
    for (const TrialRecord& r : records) {
        double trial_sq = 0.0;
        for (const auto& [truth, est] : pair_estimates(r.truth_deg, r.estimate_deg)) {
            const double err = est - truth;
            trial_sq += err * err;
        }
        total += trial_sq / static_cast<double>(r.truth_deg.size());
    }
    return std::sqrt(total / static_cast<double>(records.size()));
}

double success_rate_hard(std::span<const TrialRecord> records, const MetricConfig& config) {
    check_records(records);
    if (!(config.success_threshold_deg > 0.0))
        throw std::invalid_argument("metrics: success threshold must be positive");

    double total = 0.0;
    for (const TrialRecord& r : records) {
        double trial_sum = 0.0;
        for (const auto& [truth, est] : pair_estimates(r.truth_deg, r.estimate_deg))
            if (config.success_threshold_deg - std::abs(est - truth) >= 0.0)
                trial_sum += 1.0;
        total += trial_sum / static_cast<double>(r.truth_deg.size());
    }
    return total / static_cast<double>(records.size());
}

double success_rate_soft(std::span<const TrialRecord> records, const MetricConfig& config) {
    check_records(records);
    if (!(config.success_threshold_deg > 0.0))
        throw std::invalid_argument("metrics: success threshold must be positive");
    if (!(config.soft_decay_coeff > 0.0))
        throw std::invalid_argument("metrics: decay coefficient must be positive");

    double total = 0.0;
    for (const TrialRecord& r : records) {
        double trial_sum = 0.0;
        for (const auto& [truth, est] : pair_estimates(r.truth_deg, r.estimate_deg)) {
            const double err = std::abs(est - truth);
            const double gate = (1.0 + sign(config.success_threshold_deg - err)) / 2.0;
            trial_sum += std::exp(-err / config.soft_decay_coeff) * gate;
        }
        total += trial_sum / static_cast<double>(r.truth_deg.size());
    }
    return total / static_cast<double>(records.size());
}

double resolution_probability(std::span<const TrialRecord> records, std::pair<int, int> source_pair) {
    check_records(records);

    const int p = static_cast<int>(records.front().truth_deg.size());
    const auto [i, j] = source_pair;
    if (i < 0 || j < 0 || i >= p || j >= p || i == j)
        throw std::domain_error("resolution_probability: invalid source pair");

    long resolved = 0;
    for (const TrialRecord& r : records) {
        const auto pairs = pair_estimates(r.truth_deg, r.estimate_deg);
        const double separation = std::abs(pairs[static_cast<std::size_t>(i)].first -
                                           pairs[static_cast<std::size_t>(j)].first);
        if (separation == 0.0)
            throw std::domain_error("resolution_probability: the chosen sources share one true angle");
        const double half = separation / 2.0;
        const double err_i = std::abs(pairs[static_cast<std::size_t>(i)].second -
                                      pairs[static_cast<std::size_t>(i)].first);
        const double err_j = std::abs(pairs[static_cast<std::size_t>(j)].second -
                                      pairs[static_cast<std::size_t>(j)].first);
        if (err_i < half && err_j < half)
            ++resolved;
    }
    return static_cast<double>(resolved) / static_cast<double>(records.size());
}

}  // namespace doa
