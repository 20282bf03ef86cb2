#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "amodal/mask.hpp"
#include "amodal/render.hpp"
#include "amodal/scene.hpp"
#include "amodal/stats.hpp"

namespace amodal {

struct MatchedPair {
    int gt = 0;  // index into the gt list
    int pred = 0;
    double iou = 0.0;
};

struct Matching {
    std::vector<MatchedPair> pairs;
    std::vector<int> unmatched_gt;
    std::vector<int> unmatched_pred;
};

// Maximum-cardinality matching over pairs with IoU >= iou_threshold; among
// maximum matchings the one maximizing total IoU. Throws on grid mismatch.
Matching match_regions(const std::vector<MaskGrid>& gt, const std::vector<MaskGrid>& pred,
                       double iou_threshold = 0.5);

struct PRF {
    double precision = 0.0;
    double recall = 0.0;
    double f = 0.0;
};

// F = 2PR/(P+R), 0 when P+R = 0. Empty sides score vacuously perfect:
// no pred pixels means precision 1, no gt pixels means recall 1.
PRF prf_from_counts(std::int64_t matched_pred, std::int64_t total_pred,
                    std::int64_t matched_gt, std::int64_t total_gt);

enum class ConsistencyMode { amodal, modal };

// All n(n-1) ordered (gt, pred) F scores between annotations of one image.
// modal mode compares rendered visible masks instead of amodal masks.
std::vector<double> region_consistency(const std::vector<Scene>& annotations,
                                       ConsistencyMode mode);

// Zhang-Suen morphological thinning to 1-pixel width.
MaskGrid thin_edges(const MaskGrid& m);

// BSDS-style default matching tolerance: ceil(0.0075 * image diagonal).
double default_edge_tolerance(int width, int height);

// Bipartite max-cardinality correspondence between pred and gt edge pixels
// within Euclidean distance <= tolerance. Both maps should be thin.
PRF edge_prf(const MaskGrid& pred, const MaskGrid& gt, double tolerance);

struct SoftEdgeMap {
    int width = 0;
    int height = 0;
    std::vector<double> values;  // row-major, in [0,1]

    double at(int x, int y) const { return values[std::size_t(y) * width + x]; }
};

struct ThresholdPRF {
    double threshold = 0.0;
    PRF prf;
};

struct EdgeBenchReport {
    double ods = 0.0;  // best aggregate F over one global threshold
    double ap = 0.0;   // area under the interpolated PR curve
    double r50 = 0.0;  // maximal recall at precision >= 0.5
    std::vector<ThresholdPRF> curve;
};

struct EdgeBenchOptions {
    int threshold_count = 99;  // uniform thresholds k/(K+1), k = 1..K
    double tolerance = -1.0;   // <= 0 selects default_edge_tolerance per image
    bool thin_gt = true;       // thin the union-of-annotators gt as well
};

// Dataset benchmark of a soft edge detector: at each threshold the binarized
// prediction is thinned and matched against the union of the per-image gt
// maps, with counts aggregated over the dataset before computing P/R/F.
EdgeBenchReport edge_benchmark(const std::vector<SoftEdgeMap>& preds,
                               const std::vector<std::vector<MaskGrid>>& gt_sets,
                               const EdgeBenchOptions& opts = {});

// Leave-one-out human consistency: annotation i as detection, union of the
// others as ground truth.
std::vector<PRF> human_edge_consistency(const std::vector<MaskGrid>& edge_maps,
                                        double tolerance);

struct GtSegment {
    MaskGrid amodal;
    double occlusion = 0.0;  // q from the scene render
};

inline constexpr std::array<double, 10> kArThresholds = {
    0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95};

struct ARReport {
    double ar_all = 0.0;
    std::optional<double> ar_none, ar_partial, ar_heavy;
    std::array<double, 10> recall_curve{};
    std::int64_t gt_count = 0;
    std::int64_t none_count = 0, partial_count = 0, heavy_count = 0;
};

// Average recall of ranked proposals against amodal ground truth, overall
// and per occlusion stratum. proposals[i] are the ranked masks for image i,
// aligned with gts[i]; only the top max_proposals count.
ARReport average_recall(const std::vector<std::vector<MaskGrid>>& proposals,
                        const std::vector<std::vector<GtSegment>>& gts,
                        int max_proposals = 1000);

enum class Verdict { front, back };

struct OrderPrediction {
    Verdict verdict = Verdict::front;  // whether the first argument is in front
    double confidence = 1.0;
};

// Pairwise order predictor over (mask, proposal rank) pairs.
using Orderer =
    std::function<OrderPrediction(const MaskGrid&, int, const MaskGrid&, int)>;

struct OrderEvalReport {
    std::optional<double> accuracy;  // absent when no pair was evaluable
    std::int64_t evaluated_pairs = 0;
    std::int64_t overlapping_gt_pairs = 0;
    double pair_recall = 0.0;
};

// Matches pred_masks one-to-one to the scene's amodal masks (IoU >= 0.5);
// every overlapping gt pair with both members matched is put to the orderer,
// queried in both argument orders and averaged.
OrderEvalReport depth_order_accuracy(const std::vector<MaskGrid>& pred_masks,
                                     const Orderer& orderer, const Scene& gt_scene,
                                     const SceneRender& gt_render);

}  // namespace amodal
