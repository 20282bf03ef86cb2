#include "amodal/reference.hpp"

#include <cmath>

namespace amodal {

namespace {

// Even-odd crossing test, written out here on purpose: the reference path
// must not share code with the scanline engine it checks. Same half-open
// rule: a crossing counts iff px < intercept.
bool contains_center(const Polygon& p, double px, double py) {
    const auto& v = p.vertices;
    const std::size_t n = v.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double x1 = v[j].x, y1 = v[j].y;
        const double x2 = v[i].x, y2 = v[i].y;
        if ((y1 > py) != (y2 > py)) {
            const double xi = x1 + (py - y1) * (x2 - x1) / (y2 - y1);
            if (px < xi) inside = !inside;
        }
    }
    return inside;
}

double seg_dist_sq(double px, double py, const Point& a, const Point& b) {
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

bool in_mask(const MaskGrid& m, int x, int y) {
    if (x < 0 || y < 0 || x >= m.width() || y >= m.height()) return false;
    return m.get(x, y);
}

bool is_boundary(const MaskGrid& m, int x, int y) {
    if (!m.get(x, y)) return false;
    return !in_mask(m, x - 1, y) || !in_mask(m, x + 1, y) || !in_mask(m, x, y - 1) ||
           !in_mask(m, x, y + 1);
}

}  // namespace

MaskGrid reference_rasterize(const Polygon& p, int width, int height) {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("reference_rasterize: zero-area image");
    }
    MaskGrid m(width, height);
    for (int y = 0; y < height; y++) {
        for (int x = 0; x < width; x++) {
            if (contains_center(p, x + 0.5, y + 0.5)) m.set(x, y);
        }
    }
    return m;
}

SceneRender reference_render(const Scene& s) {
    const int w = s.width, h = s.height;
    const int n = int(s.regions.size());
    SceneRender out;
    out.width = w;
    out.height = h;
    out.regions.resize(n);
    for (int i = 0; i < n; i++) {
        out.regions[i].id = s.regions[i].id;
        out.regions[i].amodal = MaskGrid(w, h);
        out.regions[i].visible = MaskGrid(w, h);
    }

    for (int y = 0; y < h; y++) {
        for (int x = 0; x < w; x++) {
            const double px = x + 0.5, py = y + 0.5;
            int owner = -1;
            for (int i = 0; i < n; i++) {
                if (contains_center(s.regions[i].polygon, px, py)) {
                    out.regions[i].amodal.set(x, y);
                    if (owner < 0) owner = i;
                }
            }
            if (owner >= 0) out.regions[owner].visible.set(x, y);
        }
    }

    for (int i = 0; i < n; i++) {
        const std::int64_t total = out.regions[i].amodal.count();
        out.regions[i].occlusion =
            total == 0 ? 0.0
                       : 1.0 - double(out.regions[i].visible.count()) / double(total);
    }

    out.visible_edges = MaskGrid(w, h);
    out.hidden_edges = MaskGrid(w, h);
    out.figure_map.assign(std::size_t(w) * h, kFigureNone);

    for (int y = 0; y < h; y++) {
        for (int x = 0; x < w; x++) {
            bool visible_edge = false;
            for (int i = 0; i < n && !visible_edge; i++) {
                visible_edge = is_boundary(out.regions[i].visible, x, y);
            }
            if (visible_edge) out.visible_edges.set(x, y);
            bool hidden = false;
            for (int i = 0; i < n && !hidden; i++) {
                hidden = is_boundary(out.regions[i].amodal, x, y) &&
                         !out.regions[i].visible.get(x, y);
            }
            if (hidden && !visible_edge) out.hidden_edges.set(x, y);
            if (!visible_edge) continue;

            // Frontmost region whose visible mask holds the pixel or a
            // 4-neighbor.
            for (int i = 0; i < n; i++) {
                const MaskGrid& vis = out.regions[i].visible;
                if (in_mask(vis, x, y) || in_mask(vis, x - 1, y) || in_mask(vis, x + 1, y) ||
                    in_mask(vis, x, y - 1) || in_mask(vis, x, y + 1)) {
                    out.figure_map[std::size_t(y) * w + x] = s.regions[i].id;
                    break;
                }
            }
        }
    }

    for (const SharedEdgeMark& mark : s.shared_edges) {
        const Region* a = s.find_region(mark.region_a);
        if (a == nullptr) continue;
        const auto& v = a->polygon.vertices;
        const int nv = int(v.size());
        if (nv < 2 || mark.from_vertex < 0 || mark.from_vertex >= nv || mark.to_vertex < 0 ||
            mark.to_vertex >= nv || mark.from_vertex == mark.to_vertex) {
            continue;
        }
        for (int y = 0; y < h; y++) {
            for (int x = 0; x < w; x++) {
                if (!out.visible_edges.get(x, y)) continue;
                const double px = x + 0.5, py = y + 0.5;
                for (int i = mark.from_vertex; i != mark.to_vertex; i = (i + 1) % nv) {
                    if (seg_dist_sq(px, py, v[i], v[(i + 1) % nv]) <= 1.0) {
                        out.figure_map[std::size_t(y) * w + x] = kFigureShared;
                        break;
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace amodal
