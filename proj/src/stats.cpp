#include "amodal/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace amodal {

double shape_convexity(const Polygon& p) {
    const double hull_area = polygon_area(convex_hull(p));
    if (hull_area <= 0.0) {
        throw std::invalid_argument("shape_convexity: zero hull area");
    }
    return polygon_area(p) / hull_area;
}

double shape_simplicity(const Polygon& p) {
    const double perim = polygon_perimeter(p);
    if (perim <= 0.0) {
        throw std::invalid_argument("shape_simplicity: zero perimeter");
    }
    return std::sqrt(4.0 * std::numbers::pi * polygon_area(p)) / perim;
}

double edge_density(const SceneRender& render) {
    if (render.width <= 0 || render.height <= 0) return 0.0;
    return double(render.visible_edges.count()) /
           (double(render.width) * double(render.height));
}

OverlapDag build_overlap_dag(const SceneRender& render, const Scene& s) {
    OverlapDag d;
    const int n = int(s.regions.size());
    d.node_ids.reserve(n);
    for (const Region& r : s.regions) d.node_ids.push_back(r.id);
    d.adjacency.assign(n, {});
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            if (intersection_count(render.regions[i].amodal, render.regions[j].amodal) > 0) {
                d.edges.emplace_back(d.node_ids[i], d.node_ids[j]);
                d.adjacency[i].push_back(j);
            }
        }
    }
    return d;
}

namespace {

int node_index(const OverlapDag& d, int id) {
    for (std::size_t i = 0; i < d.node_ids.size(); i++) {
        if (d.node_ids[i] == id) return int(i);
    }
    return -1;
}

}  // namespace

std::vector<std::vector<int>> connected_components(const OverlapDag& d) {
    const int n = int(d.node_ids.size());
    std::vector<std::vector<int>> undirected(n);
    for (int i = 0; i < n; i++) {
        for (int j : d.adjacency[i]) {
            undirected[i].push_back(j);
            undirected[j].push_back(i);
        }
    }
    std::vector<int> label(n, -1);
    std::vector<std::vector<int>> out;
    for (int start = 0; start < n; start++) {
        if (label[start] >= 0) continue;
        std::vector<int> stack{start};
        std::vector<int> members;
        label[start] = int(out.size());
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (int v : undirected[u]) {
                if (label[v] < 0) {
                    label[v] = int(out.size());
                    stack.push_back(v);
                }
            }
        }
        std::sort(members.begin(), members.end());
        std::vector<int> ids;
        ids.reserve(members.size());
        for (int m : members) ids.push_back(d.node_ids[m]);
        out.push_back(std::move(ids));
    }
    return out;
}

int depth_layers(const OverlapDag& d, const std::vector<int>& cc) {
    // Nodes are already topologically ordered by depth position, so a single
    // forward DP suffices.
    const int n = int(d.node_ids.size());
    std::vector<bool> in_cc(n, false);
    for (int id : cc) {
        const int idx = node_index(d, id);
        if (idx < 0) throw std::invalid_argument("depth_layers: id not in DAG");
        in_cc[idx] = true;
    }
    std::vector<int> longest(n, 0);
    int best = 0;
    for (int i = 0; i < n; i++) {
        if (!in_cc[i]) continue;
        if (longest[i] == 0) longest[i] = 1;
        best = std::max(best, longest[i]);
        for (int j : d.adjacency[i]) {
            if (!in_cc[j]) continue;
            longest[j] = std::max(longest[j], longest[i] + 1);
        }
    }
    return best;
}

OcclusionStratum occlusion_stratum(double q) {
    if (q <= 0.0) return OcclusionStratum::none;
    if (q <= 0.25) return OcclusionStratum::partial;
    return OcclusionStratum::heavy;
}

namespace {

void bump(std::vector<std::int64_t>& hist, std::size_t index) {
    if (hist.size() <= index) hist.resize(index + 1, 0);
    hist[index]++;
}

}  // namespace

StatsSummary summarize(const std::vector<Scene>& dataset,
                       const std::vector<SceneRender>& renders) {
    if (dataset.empty()) throw std::invalid_argument("summarize: empty dataset");
    if (dataset.size() != renders.size()) {
        throw std::invalid_argument("summarize: dataset/render length mismatch");
    }
    StatsSummary sum;
    sum.scene_count = std::int64_t(dataset.size());

    double coverage_amodal = 0.0, coverage_visible = 0.0, density = 0.0;
    double convexity = 0.0, simplicity = 0.0, occ_total = 0.0;
    std::int64_t points = 0, occluded = 0;

    for (std::size_t si = 0; si < dataset.size(); si++) {
        const Scene& s = dataset[si];
        const SceneRender& r = renders[si];
        sum.region_count += std::int64_t(s.regions.size());

        MaskGrid amodal_union(s.width, s.height);
        MaskGrid visible_union(s.width, s.height);
        for (std::size_t i = 0; i < s.regions.size(); i++) {
            points += std::int64_t(s.regions[i].polygon.vertices.size());
            convexity += shape_convexity(s.regions[i].polygon);
            simplicity += shape_simplicity(s.regions[i].polygon);
            amodal_union |= r.regions[i].amodal;
            visible_union |= r.regions[i].visible;
            const double q = r.regions[i].occlusion;
            switch (occlusion_stratum(q)) {
                case OcclusionStratum::none:
                    sum.strata_counts[0]++;
                    break;
                case OcclusionStratum::partial:
                    sum.strata_counts[1]++;
                    break;
                case OcclusionStratum::heavy:
                    sum.strata_counts[2]++;
                    break;
            }
            if (q > 0.0) {
                occluded++;
                occ_total += q;
                // Bins (0,0.1], (0.1,0.2], ..., (0.9,1].
                int bin = int(std::ceil(q * 10.0)) - 1;
                bin = std::clamp(bin, 0, 9);
                sum.occlusion_hist[bin]++;
            }
        }
        const double px = double(s.width) * double(s.height);
        coverage_amodal += px > 0 ? double(amodal_union.count()) / px : 0.0;
        coverage_visible += px > 0 ? double(visible_union.count()) / px : 0.0;
        density += edge_density(r);

        const OverlapDag dag = build_overlap_dag(r, s);
        const auto ccs = connected_components(dag);
        bump(sum.cc_count_hist, ccs.size());
        for (const auto& cc : ccs) {
            bump(sum.cc_size_hist, cc.size());
            bump(sum.depth_layers_hist, std::size_t(depth_layers(dag, cc)));
        }
    }

    const double ns = double(sum.scene_count);
    const double nr = double(sum.region_count);
    sum.regions_per_annotation = nr / ns;
    sum.points_per_region = nr > 0 ? double(points) / nr : 0.0;
    sum.pixel_coverage_amodal = coverage_amodal / ns;
    sum.pixel_coverage_visible = coverage_visible / ns;
    sum.occlusion_rate = nr > 0 ? double(occluded) / nr : 0.0;
    sum.mean_occlusion = occluded > 0 ? occ_total / double(occluded) : 0.0;
    sum.edge_density = density / ns;
    sum.mean_convexity = nr > 0 ? convexity / nr : 0.0;
    sum.mean_simplicity = nr > 0 ? simplicity / nr : 0.0;
    return sum;
}

StatsSummary summarize(const std::vector<Scene>& dataset) {
    if (dataset.empty()) throw std::invalid_argument("summarize: empty dataset");
    std::vector<SceneRender> renders(dataset.size());
    const int n = int(dataset.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; i++) {
        try {
            renders[i] = render_scene(dataset[i]);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return summarize(dataset, renders);
}

}  // namespace amodal
