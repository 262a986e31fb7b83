#pragma once

#include <span>
#include <utility>
#include <vector>

namespace doa {

/// Truth and estimate of one Monte Carlo trial, both ascending.
struct TrialRecord {
    std::vector<double> truth_deg;
    std::vector<double> estimate_deg;
    bool degraded = false;
};

struct MetricConfig {
    double success_threshold_deg = 1.0;  // delta
    double soft_decay_coeff = 1.0;       // kappa
};

/// Sort both vectors ascending and pair by rank.
std::vector<std::pair<double, double>> pair_estimates(std::span<const double> truth,
                                                      std::span<const double> estimate);

/// sqrt of the average over trials of the per-trial mean squared
/// angle error, degrees.
double rmse(std::span<const TrialRecord> records);

/// Fraction of per-source estimates within the threshold; an error of
/// exactly delta counts as success.
double success_rate_hard(std::span<const TrialRecord> records, const MetricConfig& config);

/// Soft success: exp(-|err|/kappa) * (1 + sgn(delta - |err|)) / 2 with
/// sgn(0) = 0, averaged like the hard rate. Never exceeds the hard rate.
double success_rate_soft(std::span<const TrialRecord> records, const MetricConfig& config);

/// Fraction of trials where both chosen sources are estimated strictly
/// closer than half their true separation.
double resolution_probability(std::span<const TrialRecord> records, std::pair<int, int> source_pair);

}  // namespace doa
