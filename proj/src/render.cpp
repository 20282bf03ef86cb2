#include "amodal/render.hpp"

#include <cmath>

#include "amodal/raster.hpp"

namespace amodal {

const RegionRender* SceneRender::find_region(int id) const {
    for (const RegionRender& r : regions) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

MaskGrid mask_boundary4(const MaskGrid& m) {
    const int h = m.height();
    const int wpr = m.words_per_row();
    const MaskGrid west = m.translated(1, 0);   // west-neighbor values
    const MaskGrid east = m.translated(-1, 0);  // east-neighbor values
    MaskGrid out(m.width(), h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; y++) {
        const std::uint64_t* self = m.row_words(y);
        const std::uint64_t* north = y > 0 ? m.row_words(y - 1) : nullptr;
        const std::uint64_t* south = y + 1 < h ? m.row_words(y + 1) : nullptr;
        const std::uint64_t* w4 = west.row_words(y);
        const std::uint64_t* e4 = east.row_words(y);
        std::uint64_t* dst = out.row_words(y);
        for (int w = 0; w < wpr; w++) {
            const std::uint64_t n = north ? north[w] : 0;
            const std::uint64_t s = south ? south[w] : 0;
            dst[w] = self[w] & ~(n & s & w4[w] & e4[w]);
        }
    }
    return out;
}

namespace {

MaskGrid dilate4(const MaskGrid& m) {
    MaskGrid out = m;
    out |= m.translated(1, 0);
    out |= m.translated(-1, 0);
    out |= m.translated(0, 1);
    out |= m.translated(0, -1);
    return out;
}

}  // namespace

namespace {

double point_segment_dist_sq(double px, double py, const Point& a, const Point& b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len_sq = dx * dx + dy * dy;
    double t = 0.0;
    if (len_sq > 0.0) {
        t = ((px - a.x) * dx + (py - a.y) * dy) / len_sq;
        t = std::min(1.0, std::max(0.0, t));
    }
    const double qx = a.x + t * dx - px;
    const double qy = a.y + t * dy - py;
    return qx * qx + qy * qy;
}

// Segments of region_a's ring from from_vertex forward to to_vertex.
std::vector<std::pair<Point, Point>> mark_segments(const Scene& s, const SharedEdgeMark& m) {
    std::vector<std::pair<Point, Point>> segs;
    const Region* a = s.find_region(m.region_a);
    if (a == nullptr) return segs;
    const auto& v = a->polygon.vertices;
    const int n = int(v.size());
    if (n < 2 || m.from_vertex < 0 || m.from_vertex >= n || m.to_vertex < 0 ||
        m.to_vertex >= n || m.from_vertex == m.to_vertex) {
        return segs;
    }
    for (int i = m.from_vertex; i != m.to_vertex; i = (i + 1) % n) {
        segs.emplace_back(v[i], v[(i + 1) % n]);
    }
    return segs;
}

}  // namespace

EdgeMaps extract_edges(const SceneRender& render, const Scene& s) {
    const int w = render.width, h = render.height;
    EdgeMaps maps;
    maps.visible_edges = MaskGrid(w, h);
    maps.hidden_edges = MaskGrid(w, h);
    maps.figure_map.assign(std::size_t(w) * h, kFigureNone);

    for (const RegionRender& rr : render.regions) {
        maps.visible_edges |= mask_boundary4(rr.visible);
        maps.hidden_edges |= mask_boundary4(rr.amodal) - rr.visible;
    }
    maps.hidden_edges -= maps.visible_edges;

    // Frontmost adjoining region owns each visible edge pixel's figure side.
    for (const RegionRender& rr : render.regions) {
        MaskGrid dil = dilate4(rr.visible);
        dil &= maps.visible_edges;
#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; y++) {
            for (int x = 0; x < w; x++) {
                if (dil.get(x, y) && maps.figure_map[std::size_t(y) * w + x] == kFigureNone) {
                    maps.figure_map[std::size_t(y) * w + x] = rr.id;
                }
            }
        }
    }

    // Marked shared stretches have no figure side. A visible edge pixel is
    // shared when its center is within 1 pixel of the stretch.
    for (const SharedEdgeMark& m : s.shared_edges) {
        const auto segs = mark_segments(s, m);
        if (segs.empty()) continue;
        for (int y = 0; y < h; y++) {
            for (int x = 0; x < w; x++) {
                if (!maps.visible_edges.get(x, y)) continue;
                const double px = x + 0.5, py = y + 0.5;
                for (const auto& [a, b] : segs) {
                    if (point_segment_dist_sq(px, py, a, b) <= 1.0) {
                        maps.figure_map[std::size_t(y) * w + x] = kFigureShared;
                        break;
                    }
                }
            }
        }
    }
    return maps;
}

SceneRender render_scene_unchecked(const Scene& s) {
    SceneRender out;
    out.width = s.width;
    out.height = s.height;
    out.regions.resize(s.regions.size());

    const int n = int(s.regions.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; i++) {
        out.regions[i].id = s.regions[i].id;
        out.regions[i].amodal = rasterize(s.regions[i].polygon, s.width, s.height);
    }

    // Deterministic sequential fold over depth order.
    MaskGrid covered(s.width, s.height);
    for (int i = 0; i < n; i++) {
        RegionRender& rr = out.regions[i];
        rr.visible = rr.amodal - covered;
        covered |= rr.amodal;
        const std::int64_t total = rr.amodal.count();
        rr.occlusion = total == 0 ? 0.0 : 1.0 - double(rr.visible.count()) / double(total);
    }

    EdgeMaps maps = extract_edges(out, s);
    out.visible_edges = std::move(maps.visible_edges);
    out.hidden_edges = std::move(maps.hidden_edges);
    out.figure_map = std::move(maps.figure_map);
    return out;
}

SceneRender render_scene(const Scene& s, const ValidationOptions& opts) {
    ValidationReport rep = validate_scene(s, opts);
    if (!rep.ok()) throw SceneValidationError(std::move(rep));
    return render_scene_unchecked(s);
}

}  // namespace amodal
