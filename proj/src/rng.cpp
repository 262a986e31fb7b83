#include "doa/rng.hpp"

#include <cmath>
#include <numbers>

namespace doa {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_trial_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
    return splitmix64(splitmix64(base_seed) + trial_index);
}

double ComplexGaussian::unit_open_closed() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
}

double ComplexGaussian::unit_half_open() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

Complex ComplexGaussian::sample(double power) {
    const double u1 = unit_open_closed();
    const double u2 = unit_half_open();
    const double radius = std::sqrt(-power * std::log(u1));
    const double phase = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(phase), radius * std::sin(phase)};
}

}  // namespace doa
