#include "amodal/raster.hpp"

#include <algorithm>
#include <cmath>

namespace amodal {

MaskGrid rasterize(const Polygon& p, int width, int height) {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("rasterize: zero-area image");
    }
    MaskGrid mask(width, height);
    const auto& v = p.vertices;
    const std::size_t n = v.size();
    if (n < 3) return mask;

    // Clip the row range to the polygon's vertical extent.
    const BBox bb = polygon_bbox(p);
    const int y_lo = std::max(0, int(std::floor(bb.min_y - 0.5)));
    const int y_hi = std::min(height - 1, int(std::ceil(bb.max_y)));

#pragma omp parallel for schedule(static)
    for (int y = y_lo; y <= y_hi; y++) {
        const double py = y + 0.5;
        std::vector<double> xs;
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const double x1 = v[j].x, y1 = v[j].y;
            const double x2 = v[i].x, y2 = v[i].y;
            if ((y1 > py) != (y2 > py)) {
                xs.push_back(x1 + (py - y1) * (x2 - x1) / (y2 - y1));
            }
        }
        std::sort(xs.begin(), xs.end());
        std::uint64_t* row = mask.row_words(y);
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            // Centers px with xs[k] <= px < xs[k+1]; px = j + 0.5 and both
            // bounds are exact doubles at image scale, so the span matches
            // the per-pixel comparisons exactly.
            int j_lo = int(std::ceil(xs[k] - 0.5));
            int j_hi = int(std::ceil(xs[k + 1] - 0.5)) - 1;
            j_lo = std::max(j_lo, 0);
            j_hi = std::min(j_hi, width - 1);
            if (j_lo > j_hi) continue;
            const int w0 = j_lo >> 6, w1 = j_hi >> 6;
            const std::uint64_t first = ~std::uint64_t{0} << (j_lo & 63);
            const std::uint64_t last =
                ~std::uint64_t{0} >> (63 - (j_hi & 63));
            if (w0 == w1) {
                row[w0] |= first & last;
            } else {
                row[w0] |= first;
                for (int w = w0 + 1; w < w1; w++) row[w] |= ~std::uint64_t{0};
                row[w1] |= last;
            }
        }
    }
    return mask;
}

}  // namespace amodal
