#pragma once

#include "doa/harness.hpp"

#include <filesystem>
#include <vector>

namespace doa {

/// Static SVG of the sweep curves (plain and refined RMSE on the left
/// axis, mean reconstruction error on the right). Best effort: NaN rows
/// are left out of the polylines.
void emit_plot(const std::vector<SweepRow>& rows, const std::filesystem::path& path,
               const std::string& x_label);

}  // namespace doa
