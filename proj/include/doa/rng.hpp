#pragma once

#include "doa/types.hpp"

#include <cstdint>
#include <random>

namespace doa {

/// SplitMix64 finalizer. Used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for trial `trial_index` of an experiment with seed `base_seed`:
/// splitmix64(splitmix64(base_seed) + trial_index). Trials are
/// reproducible individually, in any order and on any worker.
std::uint64_t derive_trial_seed(std::uint64_t base_seed, std::uint64_t trial_index);

/// Circularly symmetric complex Gaussian sampler on top of mt19937_64.
/// Polar form: sqrt(-power * ln u1) * exp(i 2 pi u2) with u1 in (0,1],
/// u2 in [0,1). E|z|^2 = power.
class ComplexGaussian {
public:
    explicit ComplexGaussian(std::uint64_t seed) : gen_(seed) {}

    Complex sample(double power);

private:
    double unit_open_closed();  // (0,1]
    double unit_half_open();    // [0,1)

    std::mt19937_64 gen_;
};

}  // namespace doa
