#pragma once

#include "doa/types.hpp"

namespace doa {

/// Scored angular scan. Values are nonnegative and finite (the score is
/// capped, see pseudospectrum).
struct Spectrum {
    std::vector<double> angles_deg;
    std::vector<double> values;
};

/// Steering vectors of every grid angle, precomputed once and shared by
/// repeated scans (column g corresponds to angles_deg[g]).
struct SteeringTable {
    std::vector<double> angles_deg;
    CMatrix steering;  // element_count x grid size
};

SteeringTable tabulate_steering(const ArrayGeometry& geom, const AngularGrid& grid);

/// MUSIC score 1 / (a^H (I - P_s) a) per grid angle, with the signal
/// projector P_s supplied by the caller. The denominator is floored at
/// 1e-12, so the score never exceeds 1e12. The projector must be
/// idempotent to 1e-6 with 0 < rank < element_count. Grid points are
/// evaluated sequentially, so results do not depend on scheduling.
Spectrum pseudospectrum(const CMatrix& signal_projector, const SteeringTable& table);
Spectrum pseudospectrum(const CMatrix& signal_projector, const ArrayGeometry& geom, const AngularGrid& grid);

/// Peak selection result. `degraded` is set when fewer than `count`
/// strict local maxima existed and the output was padded from the
/// largest remaining samples.
struct PeakPick {
    std::vector<double> angles_deg;  // ascending, exactly `count` entries
    bool degraded = false;
};

/// The `count` largest strict local maxima (boundary samples qualify by
/// beating their single neighbour), angles ascending. Equal scores break
/// toward the lower angle.
PeakPick pick_peaks(const Spectrum& spectrum, int count);

/// pick_peaks over the pseudospectrum of the given projector.
PeakPick estimate_doa(const CMatrix& signal_projector, const SteeringTable& table, int count);
PeakPick estimate_doa(const CMatrix& signal_projector, const ArrayGeometry& geom, const AngularGrid& grid,
                      int count);

}  // namespace doa
