#pragma once

#include "amodal/render.hpp"

namespace amodal {

// Serial per-pixel reference engine. Re-derives everything the optimized
// path computes with straight-line loops and its own even-odd test, so the
// two routes stay independent; kept for equivalence tests and benchmarks.

MaskGrid reference_rasterize(const Polygon& p, int width, int height);

// Per-pixel frontmost-owner scan over the depth order.
SceneRender reference_render(const Scene& s);

}  // namespace amodal
