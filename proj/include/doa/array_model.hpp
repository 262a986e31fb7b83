#pragma once

#include "doa/types.hpp"

#include <cstdint>
#include <span>

namespace doa {

/// Array phase response to a unit plane wave from `theta_deg`.
/// Element m carries exp(i 2 pi (d/lambda) m sin theta); element 0 is
/// exactly 1. Angles must lie in the open interval (-90, 90).
CVector steering_vector(double theta_deg, const ArrayGeometry& geom);

/// Steering vectors stacked as columns, one per angle. Duplicate angles
/// are permitted; rank handling is the caller's concern.
CMatrix manifold_matrix(std::span<const double> thetas_deg, const ArrayGeometry& geom);

/// Synthesizes X = A S + W: S is source_count x snapshot_count i.i.d.
/// unit-power circular complex Gaussian, W is i.i.d. with per-element
/// power 10^(-snr_db/10) (zero when scenario.noiseless). The same seed
/// reproduces the same matrix bit for bit; the source block S is drawn
/// in full before the noise block W, both column by column.
CMatrix synthesize_snapshots(const Scenario& scenario, const ArrayGeometry& geom, std::uint64_t seed);

}  // namespace doa
