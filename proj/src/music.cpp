#include "doa/music.hpp"

#include "doa/array_model.hpp"

#include <algorithm>
#include <cmath>

namespace doa {

namespace {

constexpr double kDenominatorFloor = 1e-12;

void check_projector(const CMatrix& projector, Eigen::Index elements) {
    if (projector.rows() != elements || projector.cols() != elements)
        throw std::invalid_argument("pseudospectrum: projector size must match the array");
    if ((projector * projector - projector).norm() > 1e-6)
        throw std::invalid_argument("pseudospectrum: projector is not idempotent to tolerance");
    const long rank = std::lround(projector.trace().real());
    if (rank <= 0)
        throw std::domain_error("pseudospectrum: projector rank must be positive");
    if (rank >= elements)
        throw std::domain_error("pseudospectrum: projector of full rank leaves no noise subspace");
}

}  // namespace

SteeringTable tabulate_steering(const ArrayGeometry& geom, const AngularGrid& grid) {
    geom.validate();
    grid.validate();

    SteeringTable table;
    const std::size_t points = grid.size();
    table.angles_deg.resize(points);
    table.steering.resize(geom.element_count, static_cast<Eigen::Index>(points));
    for (std::size_t g = 0; g < points; ++g) {
        table.angles_deg[g] = grid.angle_deg(g);
        table.steering.col(static_cast<Eigen::Index>(g)) = steering_vector(table.angles_deg[g], geom);
    }
    return table;
}

Spectrum pseudospectrum(const CMatrix& signal_projector, const SteeringTable& table) {
    check_projector(signal_projector, table.steering.rows());

    const Eigen::Index points = table.steering.cols();
    const CMatrix projected = signal_projector * table.steering;

    Spectrum spectrum;
    spectrum.angles_deg = table.angles_deg;
    spectrum.values.resize(static_cast<std::size_t>(points));
    for (Eigen::Index g = 0; g < points; ++g) {
        const auto a = table.steering.col(g);
        const double denom = (a.dot(a) - a.dot(projected.col(g))).real();
        spectrum.values[static_cast<std::size_t>(g)] = 1.0 / std::max(denom, kDenominatorFloor);
    }
    return spectrum;
}

Spectrum pseudospectrum(const CMatrix& signal_projector, const ArrayGeometry& geom, const AngularGrid& grid) {
    return pseudospectrum(signal_projector, tabulate_steering(geom, grid));
}

PeakPick pick_peaks(const Spectrum& spectrum, int count) {
    const std::size_t n = spectrum.values.size();
    if (n == 0)
        throw std::invalid_argument("pick_peaks: spectrum must be nonempty");
    if (count < 1)
        throw std::invalid_argument("pick_peaks: peak count must be positive");
    if (static_cast<std::size_t>(count) > n)
        throw std::invalid_argument("pick_peaks: peak count exceeds grid size");
    if (spectrum.angles_deg.size() != n)
        throw std::invalid_argument("pick_peaks: angle/value length mismatch");

    const auto& v = spectrum.values;
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < n; ++i) {
        bool is_peak;
        if (n == 1)
            is_peak = true;
        else if (i == 0)
            is_peak = v[0] > v[1];
        else if (i == n - 1)
            is_peak = v[i] > v[i - 1];
        else
            is_peak = v[i] > v[i - 1] && v[i] > v[i + 1];
        if (is_peak)
            peaks.push_back(i);
    }

    // Strongest first; equal scores break toward the lower angle.
    const auto by_score = [&](std::size_t a, std::size_t b) {
        if (v[a] != v[b])
            return v[a] > v[b];
        return a < b;
    };
    std::sort(peaks.begin(), peaks.end(), by_score);

    PeakPick pick;
    const std::size_t want = static_cast<std::size_t>(count);
    std::vector<std::size_t> chosen(peaks.begin(), peaks.begin() + std::min(want, peaks.size()));
    if (chosen.size() < want) {
        pick.degraded = true;
        std::vector<bool> taken(n, false);
        for (std::size_t i : chosen)
            taken[i] = true;
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i)
            if (!taken[i])
                rest.push_back(i);
        std::sort(rest.begin(), rest.end(), by_score);
        for (std::size_t i = 0; chosen.size() < want && i < rest.size(); ++i)
            chosen.push_back(rest[i]);
    }

    std::sort(chosen.begin(), chosen.end());
    pick.angles_deg.reserve(chosen.size());
    for (std::size_t i : chosen)
        pick.angles_deg.push_back(spectrum.angles_deg[i]);
    return pick;
}

PeakPick estimate_doa(const CMatrix& signal_projector, const SteeringTable& table, int count) {
    return pick_peaks(pseudospectrum(signal_projector, table), count);
}

PeakPick estimate_doa(const CMatrix& signal_projector, const ArrayGeometry& geom, const AngularGrid& grid,
                      int count) {
    return pick_peaks(pseudospectrum(signal_projector, geom, grid), count);
}

}  // namespace doa
