#pragma once

#include "loctile/tiling_types.hpp"

#include <cstdint>
#include <string>

namespace loctile {

inline constexpr int kSvgUnit = 8;

/// FNV-1a over the center coordinates, mapped to an RGB fill.
std::string tile_fill(const Element& center);

/// SVG of a Z^2 tiling: one evenodd <path class="tile"> per tile traced from
/// its boundary loops, and one black <path class="remainder"> for the
/// uncovered window cells. Cell (x, y) is the square [x, x+1] x [y, y+1],
/// drawn with y increasing upward. Throws TilingError for other groups.
std::string render_svg(const ApproximateTiling& t);

}  // namespace loctile
