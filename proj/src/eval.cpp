#include "amodal/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "amodal/matching.hpp"

namespace amodal {

Matching match_regions(const std::vector<MaskGrid>& gt, const std::vector<MaskGrid>& pred,
                       double iou_threshold) {
    const int ng = int(gt.size()), np = int(pred.size());
    std::vector<std::vector<std::pair<int, double>>> wadj(ng);
    for (int i = 0; i < ng; i++) {
        for (int j = 0; j < np; j++) {
            const double iou = mask_iou(gt[i], pred[j]);
            if (iou >= iou_threshold) wadj[i].emplace_back(j, iou);
        }
    }
    const std::vector<int> assign = max_cardinality_assignment(ng, np, wadj);

    Matching m;
    std::vector<bool> pred_used(np, false);
    for (int i = 0; i < ng; i++) {
        if (assign[i] < 0) {
            m.unmatched_gt.push_back(i);
        } else {
            m.pairs.push_back({i, assign[i], mask_iou(gt[i], pred[assign[i]])});
            pred_used[assign[i]] = true;
        }
    }
    for (int j = 0; j < np; j++) {
        if (!pred_used[j]) m.unmatched_pred.push_back(j);
    }
    return m;
}

PRF prf_from_counts(std::int64_t matched_pred, std::int64_t total_pred,
                    std::int64_t matched_gt, std::int64_t total_gt) {
    PRF r;
    r.precision = total_pred == 0 ? 1.0 : double(matched_pred) / double(total_pred);
    r.recall = total_gt == 0 ? 1.0 : double(matched_gt) / double(total_gt);
    const double denom = r.precision + r.recall;
    r.f = denom > 0.0 ? 2.0 * r.precision * r.recall / denom : 0.0;
    return r;
}

std::vector<double> region_consistency(const std::vector<Scene>& annotations,
                                       ConsistencyMode mode) {
    const int n = int(annotations.size());
    if (n < 2) {
        throw std::invalid_argument("region_consistency: need at least 2 annotations");
    }
    for (const Scene& s : annotations) {
        if (s.width != annotations[0].width || s.height != annotations[0].height) {
            throw std::invalid_argument("region_consistency: image dimensions differ");
        }
    }

    std::vector<std::vector<MaskGrid>> masks(n);
    for (int a = 0; a < n; a++) {
        const SceneRender render = render_scene(annotations[a]);
        for (const RegionRender& rr : render.regions) {
            masks[a].push_back(mode == ConsistencyMode::amodal ? rr.amodal : rr.visible);
        }
    }

    std::vector<double> scores;
    scores.reserve(std::size_t(n) * (n - 1));
    for (int g = 0; g < n; g++) {
        for (int p = 0; p < n; p++) {
            if (p == g) continue;
            const Matching m = match_regions(masks[g], masks[p], 0.5);
            const auto matched = std::int64_t(m.pairs.size());
            const PRF prf = prf_from_counts(matched, std::int64_t(masks[p].size()),
                                            matched, std::int64_t(masks[g].size()));
            scores.push_back(prf.f);
        }
    }
    return scores;
}

MaskGrid thin_edges(const MaskGrid& m) {
    const int w = m.width(), h = m.height();
    MaskGrid cur = m;
    auto at = [&cur, w, h](int x, int y) -> int {
        if (x < 0 || y < 0 || x >= w || y >= h) return 0;
        return cur.get(x, y) ? 1 : 0;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int pass = 0; pass < 2; pass++) {
            std::vector<std::pair<int, int>> kill;
            for (int y = 0; y < h; y++) {
                for (int x = 0; x < w; x++) {
                    if (!cur.get(x, y)) continue;
                    const int p2 = at(x, y - 1), p3 = at(x + 1, y - 1), p4 = at(x + 1, y);
                    const int p5 = at(x + 1, y + 1), p6 = at(x, y + 1), p7 = at(x - 1, y + 1);
                    const int p8 = at(x - 1, y), p9 = at(x - 1, y - 1);
                    const int b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
                    if (b < 2 || b > 6) continue;
                    const int seq[9] = {p2, p3, p4, p5, p6, p7, p8, p9, p2};
                    int a = 0;
                    for (int k = 0; k < 8; k++) {
                        if (seq[k] == 0 && seq[k + 1] == 1) a++;
                    }
                    if (a != 1) continue;
                    if (pass == 0) {
                        if (p2 * p4 * p6 != 0 || p4 * p6 * p8 != 0) continue;
                    } else {
                        if (p2 * p4 * p8 != 0 || p2 * p6 * p8 != 0) continue;
                    }
                    kill.emplace_back(x, y);
                }
            }
            for (const auto& [x, y] : kill) cur.set(x, y, false);
            if (!kill.empty()) changed = true;
        }
    }
    return cur;
}

double default_edge_tolerance(int width, int height) {
    return std::ceil(0.0075 * std::hypot(double(width), double(height)));
}

namespace {

std::vector<std::pair<int, int>> mask_pixels(const MaskGrid& m) {
    std::vector<std::pair<int, int>> px;
    for (int y = 0; y < m.height(); y++) {
        for (int x = 0; x < m.width(); x++) {
            if (m.get(x, y)) px.emplace_back(x, y);
        }
    }
    return px;
}

std::int64_t edge_match_count(const MaskGrid& pred, const MaskGrid& gt, double tolerance) {
    const auto ppx = mask_pixels(pred);
    const auto gpx = mask_pixels(gt);
    if (ppx.empty() || gpx.empty()) return 0;

    // Bucket gt pixels by row for a windowed candidate scan.
    std::vector<std::vector<int>> by_row(gt.height());
    for (int k = 0; k < int(gpx.size()); k++) by_row[gpx[k].second].push_back(k);

    const int radius = int(std::floor(tolerance));
    const double tol_sq = tolerance * tolerance;
    std::vector<std::vector<int>> adj(ppx.size());
    for (int i = 0; i < int(ppx.size()); i++) {
        const auto [px, py] = ppx[i];
        for (int y = std::max(0, py - radius); y <= std::min(gt.height() - 1, py + radius);
             y++) {
            for (int k : by_row[y]) {
                const double dx = px - gpx[k].first;
                const double dy = py - y;
                if (dx * dx + dy * dy <= tol_sq) adj[i].push_back(k);
            }
        }
    }
    const std::vector<int> match =
        max_bipartite_matching(int(ppx.size()), int(gpx.size()), adj);
    std::int64_t count = 0;
    for (int v : match) {
        if (v >= 0) count++;
    }
    return count;
}

}  // namespace

PRF edge_prf(const MaskGrid& pred, const MaskGrid& gt, double tolerance) {
    if (!pred.same_shape(gt)) {
        throw std::invalid_argument("edge_prf: dimension mismatch");
    }
    const std::int64_t matched = edge_match_count(pred, gt, tolerance);
    return prf_from_counts(matched, pred.count(), matched, gt.count());
}

EdgeBenchReport edge_benchmark(const std::vector<SoftEdgeMap>& preds,
                               const std::vector<std::vector<MaskGrid>>& gt_sets,
                               const EdgeBenchOptions& opts) {
    if (preds.empty() || preds.size() != gt_sets.size()) {
        throw std::invalid_argument("edge_benchmark: need one gt set per prediction");
    }
    const int K = opts.threshold_count;
    if (K < 1) throw std::invalid_argument("edge_benchmark: threshold_count < 1");

    // Per-image union-of-annotators ground truth.
    std::vector<MaskGrid> gt_union(preds.size());
    std::vector<double> tolerance(preds.size());
    for (std::size_t i = 0; i < preds.size(); i++) {
        if (gt_sets[i].empty()) {
            throw std::invalid_argument("edge_benchmark: image without gt maps");
        }
        MaskGrid u(preds[i].width, preds[i].height);
        for (const MaskGrid& g : gt_sets[i]) u |= g;
        gt_union[i] = opts.thin_gt ? thin_edges(u) : u;
        tolerance[i] = opts.tolerance > 0.0
                           ? opts.tolerance
                           : default_edge_tolerance(preds[i].width, preds[i].height);
    }

    EdgeBenchReport report;
    report.curve.resize(K);

    std::vector<std::array<std::int64_t, 4>> counts(K);  // cntP, sumP, cntR, sumR
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < K; k++) {
        const double t = double(k + 1) / double(K + 1);
        std::array<std::int64_t, 4> acc{0, 0, 0, 0};
        for (std::size_t i = 0; i < preds.size(); i++) {
            MaskGrid bin(preds[i].width, preds[i].height);
            for (int y = 0; y < preds[i].height; y++) {
                for (int x = 0; x < preds[i].width; x++) {
                    if (preds[i].at(x, y) >= t) bin.set(x, y);
                }
            }
            const MaskGrid thin = thin_edges(bin);
            const std::int64_t matched = edge_match_count(thin, gt_union[i], tolerance[i]);
            acc[0] += matched;
            acc[1] += thin.count();
            acc[2] += matched;
            acc[3] += gt_union[i].count();
        }
        counts[k] = acc;
    }
    for (int k = 0; k < K; k++) {
        report.curve[k].threshold = double(k + 1) / double(K + 1);
        report.curve[k].prf =
            prf_from_counts(counts[k][0], counts[k][1], counts[k][2], counts[k][3]);
    }

    for (const ThresholdPRF& pt : report.curve) {
        if (pt.prf.f > report.ods) report.ods = pt.prf.f;
        if (pt.prf.precision >= 0.5) report.r50 = std::max(report.r50, pt.prf.recall);
    }

    // Area under the precision envelope over recall.
    std::vector<std::pair<double, double>> rp;
    rp.reserve(report.curve.size());
    for (const ThresholdPRF& pt : report.curve) {
        rp.emplace_back(pt.prf.recall, pt.prf.precision);
    }
    std::sort(rp.begin(), rp.end());
    double prev_r = 0.0;
    for (std::size_t i = 0; i < rp.size(); i++) {
        if (i + 1 < rp.size() && rp[i + 1].first == rp[i].first) continue;
        double env = 0.0;  // max precision at recall >= rp[i].first
        for (std::size_t j = i; j < rp.size(); j++) env = std::max(env, rp[j].second);
        report.ap += (rp[i].first - prev_r) * env;
        prev_r = rp[i].first;
    }
    return report;
}

std::vector<PRF> human_edge_consistency(const std::vector<MaskGrid>& edge_maps,
                                        double tolerance) {
    if (edge_maps.size() < 2) {
        throw std::invalid_argument("human_edge_consistency: need at least 2 annotations");
    }
    std::vector<PRF> out(edge_maps.size());
    for (std::size_t i = 0; i < edge_maps.size(); i++) {
        MaskGrid others(edge_maps[i].width(), edge_maps[i].height());
        for (std::size_t j = 0; j < edge_maps.size(); j++) {
            if (j != i) others |= edge_maps[j];
        }
        out[i] = edge_prf(thin_edges(edge_maps[i]), thin_edges(others), tolerance);
    }
    return out;
}

ARReport average_recall(const std::vector<std::vector<MaskGrid>>& proposals,
                        const std::vector<std::vector<GtSegment>>& gts,
                        int max_proposals) {
    if (proposals.size() != gts.size()) {
        throw std::invalid_argument("average_recall: proposals/gts image count mismatch");
    }

    struct GtOutcome {
        double best_iou = 0.0;
        OcclusionStratum stratum = OcclusionStratum::none;
    };
    std::vector<GtOutcome> outcomes;
    for (std::size_t img = 0; img < gts.size(); img++) {
        const auto& props = proposals[img];
        const int top = std::min<int>(max_proposals, int(props.size()));
        for (const GtSegment& gt : gts[img]) {
            GtOutcome o;
            o.stratum = occlusion_stratum(gt.occlusion);
            for (int p = 0; p < top; p++) {
                o.best_iou = std::max(o.best_iou, mask_iou(gt.amodal, props[p]));
            }
            outcomes.push_back(o);
        }
    }
    if (outcomes.empty()) {
        throw std::invalid_argument("average_recall: no ground truth segments");
    }

    ARReport rep;
    rep.gt_count = std::int64_t(outcomes.size());
    std::array<std::int64_t, 3> stratum_total{0, 0, 0};
    std::array<std::array<std::int64_t, 10>, 3> stratum_hits{};
    std::array<std::int64_t, 10> all_hits{};
    for (const GtOutcome& o : outcomes) {
        const int s = int(o.stratum);
        stratum_total[s]++;
        for (std::size_t t = 0; t < kArThresholds.size(); t++) {
            if (o.best_iou >= kArThresholds[t]) {
                all_hits[t]++;
                stratum_hits[s][t]++;
            }
        }
    }
    rep.none_count = stratum_total[0];
    rep.partial_count = stratum_total[1];
    rep.heavy_count = stratum_total[2];

    double ar = 0.0;
    for (std::size_t t = 0; t < kArThresholds.size(); t++) {
        rep.recall_curve[t] = double(all_hits[t]) / double(rep.gt_count);
        ar += rep.recall_curve[t];
    }
    rep.ar_all = ar / double(kArThresholds.size());

    auto stratum_ar = [&](int s) -> std::optional<double> {
        if (stratum_total[s] == 0) return std::nullopt;
        double acc = 0.0;
        for (std::size_t t = 0; t < kArThresholds.size(); t++) {
            acc += double(stratum_hits[s][t]) / double(stratum_total[s]);
        }
        return acc / double(kArThresholds.size());
    };
    rep.ar_none = stratum_ar(0);
    rep.ar_partial = stratum_ar(1);
    rep.ar_heavy = stratum_ar(2);
    return rep;
}

OrderEvalReport depth_order_accuracy(const std::vector<MaskGrid>& pred_masks,
                                     const Orderer& orderer, const Scene& gt_scene,
                                     const SceneRender& gt_render) {
    const int n = int(gt_scene.regions.size());
    std::vector<MaskGrid> gt_amodal;
    gt_amodal.reserve(n);
    for (const RegionRender& rr : gt_render.regions) gt_amodal.push_back(rr.amodal);

    const Matching m = match_regions(gt_amodal, pred_masks, 0.5);
    std::vector<int> pred_of_gt(n, -1);
    for (const MatchedPair& p : m.pairs) pred_of_gt[p.gt] = p.pred;

    OrderEvalReport rep;
    std::int64_t correct = 0;
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            if (intersection_count(gt_amodal[i], gt_amodal[j]) == 0) continue;
            rep.overlapping_gt_pairs++;
            const int pa = pred_of_gt[i], pb = pred_of_gt[j];
            if (pa < 0 || pb < 0) continue;
            rep.evaluated_pairs++;

            // Query both argument orders and average; i precedes j in depth,
            // so "a in front" is the correct call.
            const OrderPrediction f = orderer(pred_masks[pa], pa, pred_masks[pb], pb);
            const OrderPrediction r = orderer(pred_masks[pb], pb, pred_masks[pa], pa);
            const double s1 =
                f.verdict == Verdict::front ? f.confidence : 1.0 - f.confidence;
            const double s2 =
                r.verdict == Verdict::front ? r.confidence : 1.0 - r.confidence;
            const double a_front = 0.5 * (s1 + (1.0 - s2));
            bool predict_a_front;
            if (a_front > 0.5) {
                predict_a_front = true;
            } else if (a_front < 0.5) {
                predict_a_front = false;
            } else {
                predict_a_front = pa < pb;  // deterministic tie fallback
            }
            if (predict_a_front) correct++;
        }
    }
    if (rep.evaluated_pairs > 0) {
        rep.accuracy = double(correct) / double(rep.evaluated_pairs);
    }
    rep.pair_recall = rep.overlapping_gt_pairs > 0
                          ? double(rep.evaluated_pairs) / double(rep.overlapping_gt_pairs)
                          : 0.0;
    return rep;
}

}  // namespace amodal
