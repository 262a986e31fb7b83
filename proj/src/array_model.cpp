#include "doa/array_model.hpp"

#include "doa/rng.hpp"

#include <cmath>
#include <numbers>

namespace doa {

CVector steering_vector(double theta_deg, const ArrayGeometry& geom) {
    geom.validate();
    if (!std::isfinite(theta_deg) || theta_deg <= -90.0 || theta_deg >= 90.0)
        throw std::domain_error("steering_vector: angle must lie in (-90, 90) degrees");

    const double theta_rad = theta_deg * std::numbers::pi / 180.0;
    const double phase_step = 2.0 * std::numbers::pi * geom.spacing_over_wavelength * std::sin(theta_rad);

    CVector a(geom.element_count);
    for (int m = 0; m < geom.element_count; ++m) {
        const double phase = phase_step * static_cast<double>(m);
        a(m) = Complex(std::cos(phase), std::sin(phase));
    }
    a(0) = Complex(1.0, 0.0);
    return a;
}

CMatrix manifold_matrix(std::span<const double> thetas_deg, const ArrayGeometry& geom) {
    geom.validate();
    if (thetas_deg.empty())
        throw std::invalid_argument("manifold_matrix: angle list must not be empty");

    CMatrix a(geom.element_count, static_cast<Eigen::Index>(thetas_deg.size()));
    for (std::size_t p = 0; p < thetas_deg.size(); ++p)
        a.col(static_cast<Eigen::Index>(p)) = steering_vector(thetas_deg[p], geom);
    return a;
}

CMatrix synthesize_snapshots(const Scenario& scenario, const ArrayGeometry& geom, std::uint64_t seed) {
    scenario.validate(geom);

    const int sources = scenario.source_count();
    const int snapshots = scenario.snapshot_count;
    const CMatrix manifold = manifold_matrix(scenario.true_doas_deg, geom);

    ComplexGaussian rng(seed);

    // Sources first, then noise, both column by column. Keeping the
    // source stream a prefix lets a noiseless re-run with the same seed
    // reproduce the exact signal part.
    CMatrix source_block(sources, snapshots);
    for (int n = 0; n < snapshots; ++n)
        for (int p = 0; p < sources; ++p)
            source_block(p, n) = rng.sample(1.0);

    CMatrix x = manifold * source_block;
    if (!scenario.noiseless) {
        const double noise_power = std::pow(10.0, -scenario.snr_db / 10.0);
        for (int n = 0; n < snapshots; ++n)
            for (int m = 0; m < geom.element_count; ++m)
                x(m, n) += rng.sample(noise_power);
    }
    return x;
}

}  // namespace doa
