#pragma once

#include <stdexcept>
#include <vector>

namespace amodal {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Closed polygon: the last vertex connects back to the first. A single
// exterior ring in continuous pixel units; holes are not representable.
struct Polygon {
    std::vector<Point> vertices;
};

// Absolute shoelace area. Degenerate (collinear) input yields 0.
double polygon_area(const Polygon& p);

// Sum of edge lengths including the closing edge.
double polygon_perimeter(const Polygon& p);

// Convex hull by monotone chain; collinear points on hull edges are dropped.
// Throws std::invalid_argument for fewer than 3 vertices or an all-collinear
// input (degenerate hull).
Polygon convex_hull(const Polygon& p);

// Even-odd membership test evaluated with the half-open crossing rule: a
// crossing at x-intercept xi counts iff px < xi. Centers exactly on a
// boundary therefore resolve deterministically (left/bottom in, right/top
// out). The scanline rasterizer derives its fill spans from the same rule.
bool point_in_polygon(const Polygon& p, double px, double py);

// True when two non-adjacent edges properly cross or overlap along a
// segment. Touching at shared (snapped) vertices is not an intersection.
bool self_intersects(const Polygon& p);

struct BBox {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
};

BBox polygon_bbox(const Polygon& p);

bool polygon_is_finite(const Polygon& p);

}  // namespace amodal
