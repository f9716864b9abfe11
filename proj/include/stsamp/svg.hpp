#pragma once
//
// Static SVG scatter plots with optional implicit-curve overlays (marching
// squares on the lattice residual).
//

#include <optional>
#include <string>

#include "stsamp/lattice.hpp"
#include "stsamp/pointset.hpp"

namespace stsamp {

/// Scatter plot of the set; when a lattice is given, its residual zero set is
/// overlaid as polyline segments.
std::string render_svg(const PointSet2& s, const std::optional<CurvilinearLattice>& overlay,
                       int pixels = 800);

void write_svg(const std::string& path, const PointSet2& s,
               const std::optional<CurvilinearLattice>& overlay, int pixels = 800);

} // namespace stsamp
