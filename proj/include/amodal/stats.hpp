#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "amodal/render.hpp"
#include "amodal/scene.hpp"

namespace amodal {

// Area(p) / Area(hull(p)); 1 for convex polygons. Throws when the hull is
// degenerate.
double shape_convexity(const Polygon& p);

// sqrt(4*pi*Area) / Perimeter; 1 for a circle, strictly below for any
// polygon. Throws on zero perimeter.
double shape_simplicity(const Polygon& p);

// Fraction of image pixels that are visible-edge pixels.
double edge_density(const SceneRender& render);

// Occlusion precedence among overlapping regions: edge front -> back for
// every pair whose amodal rasters share at least one pixel. Acyclic by
// construction since depth order is total.
struct OverlapDag {
    std::vector<int> node_ids;                    // region ids in depth order
    std::vector<std::pair<int, int>> edges;       // (front id, back id)
    std::vector<std::vector<int>> adjacency;      // successor indexes per node
};

OverlapDag build_overlap_dag(const SceneRender& render, const Scene& s);

// Components of the undirected DAG, each a list of region ids in depth
// order; singletons included.
std::vector<std::vector<int>> connected_components(const OverlapDag& d);

// Number of nodes on the longest directed path within the component
// (the minimum depth layers needed to order it). cc holds region ids.
int depth_layers(const OverlapDag& d, const std::vector<int>& cc);

// Occlusion strata: none (q = 0), partial (0 < q <= 0.25), heavy (q > 0.25).
enum class OcclusionStratum { none, partial, heavy };
OcclusionStratum occlusion_stratum(double q);

struct StatsSummary {
    std::int64_t scene_count = 0;
    std::int64_t region_count = 0;
    double regions_per_annotation = 0.0;
    double points_per_region = 0.0;
    double pixel_coverage_amodal = 0.0;   // pixels under at least one amodal mask
    double pixel_coverage_visible = 0.0;  // same union counted on visible masks
    double occlusion_rate = 0.0;          // fraction of regions with q > 0
    double mean_occlusion = 0.0;          // mean q over occluded regions
    double edge_density = 0.0;
    double mean_convexity = 0.0;
    double mean_simplicity = 0.0;
    std::array<std::int64_t, 3> strata_counts{};       // none, partial, heavy
    std::array<std::int64_t, 10> occlusion_hist{};     // q in (0,1], ten bins
    std::vector<std::int64_t> cc_count_hist;           // index = CCs per scene
    std::vector<std::int64_t> cc_size_hist;            // index = CC size
    std::vector<std::int64_t> depth_layers_hist;       // index = layers per CC
};

// Aggregates over a dataset; scenes must validate cleanly. Throws on an
// empty dataset.
StatsSummary summarize(const std::vector<Scene>& dataset);

// Same, reusing renders the caller already has (must align with dataset).
StatsSummary summarize(const std::vector<Scene>& dataset,
                       const std::vector<SceneRender>& renders);

}  // namespace amodal
