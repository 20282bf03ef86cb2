#include "amodal/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace amodal {

double polygon_area(const Polygon& p) {
    const auto& v = p.vertices;
    const std::size_t n = v.size();
    double acc = 0.0;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        acc += v[j].x * v[i].y - v[i].x * v[j].y;
    }
    return std::abs(acc) * 0.5;
}

double polygon_perimeter(const Polygon& p) {
    const auto& v = p.vertices;
    const std::size_t n = v.size();
    double acc = 0.0;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        acc += std::hypot(v[i].x - v[j].x, v[i].y - v[j].y);
    }
    return acc;
}

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

Polygon convex_hull(const Polygon& p) {
    if (p.vertices.size() < 3) {
        throw std::invalid_argument("convex_hull: at least 3 vertices required");
    }
    std::vector<Point> pts = p.vertices;
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point& a, const Point& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());

    const std::size_t n = pts.size();
    std::vector<Point> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; i++) {  // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) k--;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) k--;
        hull[k++] = pts[i];
    }
    hull.resize(k > 0 ? k - 1 : 0);  // last point repeats the first
    if (hull.size() < 3) {
        throw std::invalid_argument("convex_hull: degenerate hull (collinear input)");
    }
    return Polygon{std::move(hull)};
}

bool point_in_polygon(const Polygon& p, double px, double py) {
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

namespace {

int orient_sign(const Point& a, const Point& b, const Point& c) {
    const double d = cross(a, b, c);
    return d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
}

// Proper crossing, or collinear segments whose interiors overlap. Touching
// (a vertex on another edge or on another vertex) does not count; snapped
// self-touches are legal annotations.
bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
    const int o1 = orient_sign(a, b, c);
    const int o2 = orient_sign(a, b, d);
    const int o3 = orient_sign(c, d, a);
    const int o4 = orient_sign(c, d, b);
    if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
        return true;
    }
    if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
        // Collinear: overlapping beyond a single point counts as crossing.
        const double lo1 = std::min(a.x, b.x), hi1 = std::max(a.x, b.x);
        const double lo2 = std::min(c.x, d.x), hi2 = std::max(c.x, d.x);
        double lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
        if (lo1 == hi1 && lo2 == hi2) {  // both vertical in x, compare in y
            lo = std::max(std::min(a.y, b.y), std::min(c.y, d.y));
            hi = std::min(std::max(a.y, b.y), std::max(c.y, d.y));
        }
        return lo < hi;
    }
    return false;
}

}  // namespace

bool self_intersects(const Polygon& p) {
    const auto& v = p.vertices;
    const std::size_t n = v.size();
    if (n < 4) return false;  // a triangle cannot self-intersect
    for (std::size_t i = 0; i < n; i++) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; j++) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;  // adjacent
            const Point& c = v[j];
            const Point& d = v[(j + 1) % n];
            if (segments_cross(a, b, c, d)) return true;
        }
    }
    return false;
}

BBox polygon_bbox(const Polygon& p) {
    BBox b;
    if (p.vertices.empty()) return b;
    b.min_x = b.max_x = p.vertices[0].x;
    b.min_y = b.max_y = p.vertices[0].y;
    for (const Point& q : p.vertices) {
        b.min_x = std::min(b.min_x, q.x);
        b.max_x = std::max(b.max_x, q.x);
        b.min_y = std::min(b.min_y, q.y);
        b.max_y = std::max(b.max_y, q.y);
    }
    return b;
}

bool polygon_is_finite(const Polygon& p) {
    for (const Point& q : p.vertices) {
        if (!std::isfinite(q.x) || !std::isfinite(q.y)) return false;
    }
    return true;
}

}  // namespace amodal
