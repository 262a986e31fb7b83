#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace doa {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Uniform linear array described by its element count and the
/// element spacing expressed as a fraction of the carrier wavelength.
struct ArrayGeometry {
    int element_count = 8;
    double spacing_over_wavelength = 0.5;

    void validate() const;
};

/// One synthetic measurement scenario: narrowband far-field sources in
/// white noise. Angles are degrees relative to array broadside.
struct Scenario {
    std::vector<double> true_doas_deg;
    double snr_db = 0.0;           // per-source, per-element SNR
    int snapshot_count = 50;
    bool noiseless = false;        // forces the noise term to zero

    int source_count() const { return static_cast<int>(true_doas_deg.size()); }
    void validate(const ArrayGeometry& geom) const;
};

/// Inclusive scan grid over candidate angles, degrees.
struct AngularGrid {
    double start_deg = -89.9;
    double stop_deg = 89.9;
    double step_deg = 0.1;

    void validate() const;
    std::size_t size() const;
    double angle_deg(std::size_t index) const { return start_deg + static_cast<double>(index) * step_deg; }
};

/// Inclusive scan grid over the modification factor.
struct MuGrid {
    double start = 0.0;
    double stop = 5.0;
    double step = 0.1;

    void validate() const;
    std::size_t size() const;
    double value(std::size_t index) const { return start + static_cast<double>(index) * step; }
};

/// Number of points of the inclusive grid {start, start+step, ..., stop}.
/// A small forward tolerance absorbs the representation error of
/// (stop-start)/step so decimal steps land on the intended count.
std::size_t inclusive_grid_count(double start, double stop, double step);

/// A modification factor produced a numerically rank-collapsed subspace
/// (the grid point is skipped, not fatal).
class DegenerateRefinement : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every modification factor on the search grid was degenerate.
class RefinementFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The eigenvalue similarity matrix is numerically rank-deficient, so no
/// transformation matrix exists. Carries the condition estimate that
/// triggered the rejection.
class RankDeficientSimilarity : public std::runtime_error {
public:
    RankDeficientSimilarity(const std::string& what, double condition_estimate)
        : std::runtime_error(what), condition_estimate_(condition_estimate) {}

    double condition_estimate() const { return condition_estimate_; }

private:
    double condition_estimate_;
};

}  // namespace doa
