#include "doa/types.hpp"

#include <cmath>

namespace doa {

void ArrayGeometry::validate() const {
    if (element_count < 2)
        throw std::invalid_argument("array geometry: element_count must be at least 2");
    if (!(spacing_over_wavelength > 0.0) || !std::isfinite(spacing_over_wavelength))
        throw std::invalid_argument("array geometry: spacing_over_wavelength must be positive");
}

void Scenario::validate(const ArrayGeometry& geom) const {
    geom.validate();
    if (true_doas_deg.empty())
        throw std::invalid_argument("scenario: at least one source direction is required");
    if (source_count() >= geom.element_count)
        throw std::invalid_argument("scenario: source count must be below the element count");
    for (std::size_t i = 0; i < true_doas_deg.size(); ++i) {
        const double t = true_doas_deg[i];
        if (!std::isfinite(t) || t <= -90.0 || t >= 90.0)
            throw std::invalid_argument("scenario: directions must lie in (-90, 90) degrees");
        if (i > 0 && !(true_doas_deg[i - 1] < t))
            throw std::invalid_argument("scenario: directions must be strictly ascending");
    }
    if (snapshot_count < 1)
        throw std::invalid_argument("scenario: snapshot_count must be positive");
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("scenario: snr_db must be finite");
}

std::size_t inclusive_grid_count(double start, double stop, double step) {
    if (!(step > 0.0) || !(start <= stop) || !std::isfinite(start) || !std::isfinite(stop))
        throw std::invalid_argument("grid: need start <= stop and step > 0");
    return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-6)) + 1;
}

void AngularGrid::validate() const {
    if (!(start_deg < stop_deg) || !(step_deg > 0.0))
        throw std::invalid_argument("angular grid: need start < stop and step > 0");
    if (start_deg <= -90.0 || stop_deg >= 90.0)
        throw std::invalid_argument("angular grid: scan range must stay inside (-90, 90) degrees");
    if ((stop_deg - start_deg) / step_deg < 10.0)
        throw std::invalid_argument("angular grid: need at least 10 steps across the scan range");
}

std::size_t AngularGrid::size() const { return inclusive_grid_count(start_deg, stop_deg, step_deg); }

void MuGrid::validate() const {
    if (!(step > 0.0))
        throw std::invalid_argument("mu grid: step must be positive");
    if (!(start <= stop))
        throw std::invalid_argument("mu grid: need start <= stop");
    if (start < 0.0)
        throw std::invalid_argument("mu grid: modification factors are nonnegative");
}

std::size_t MuGrid::size() const { return inclusive_grid_count(start, stop, step); }

}  // namespace doa
