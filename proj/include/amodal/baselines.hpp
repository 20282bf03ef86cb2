#pragma once

#include "amodal/eval.hpp"
#include "amodal/mask.hpp"

namespace amodal {

// Heuristic pairwise orderers. All are total, deterministic and
// antisymmetric; ties fall back to the numeric ids. Empty masks are
// rejected.

// Smaller mask in front.
OrderPrediction order_by_area(const MaskGrid& a, int id_a, const MaskGrid& b, int id_b);

// Mask closest to the top is in back (key: topmost set-pixel row).
OrderPrediction order_by_yaxis(const MaskGrid& a, int id_a, const MaskGrid& b, int id_b);

// Variant using the centroid row instead of the topmost row.
OrderPrediction order_by_yaxis_centroid(const MaskGrid& a, int id_a, const MaskGrid& b,
                                        int id_b);

// Amodal-completion baselines over a modal (visible) mask.

// Predict no occlusion: the mask itself.
MaskGrid amodal_identity(const MaskGrid& modal);

// Raster convex hull of the set pixels, a shape-simplifying completion;
// always a superset of the input. Throws on an empty mask.
MaskGrid amodal_hull_expand(const MaskGrid& modal);

}  // namespace amodal
