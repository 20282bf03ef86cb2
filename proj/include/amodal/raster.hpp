#pragma once

#include "amodal/geometry.hpp"
#include "amodal/mask.hpp"

namespace amodal {

// Scanline even-odd fill sampled at pixel centers (x+0.5, y+0.5). A pixel is
// set iff its center is inside under point_in_polygon's half-open crossing
// rule; both routes share the exact crossing arithmetic, so they agree
// bit-for-bit even when centers graze the boundary. Rows fill in parallel.
// Throws std::invalid_argument for a zero-area image.
MaskGrid rasterize(const Polygon& p, int width, int height);

}  // namespace amodal
