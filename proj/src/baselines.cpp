#include "amodal/baselines.hpp"

#include <stdexcept>

#include "amodal/geometry.hpp"
#include "amodal/raster.hpp"

namespace amodal {

namespace {

void require_non_empty(const MaskGrid& m, const char* who) {
    if (!m.any()) throw std::invalid_argument(std::string(who) + ": empty mask");
}

OrderPrediction front_if(bool first_in_front) {
    return {first_in_front ? Verdict::front : Verdict::back, 1.0};
}

int topmost_row(const MaskGrid& m) {
    for (int y = 0; y < m.height(); y++) {
        const std::uint64_t* row = m.row_words(y);
        for (int w = 0; w < m.words_per_row(); w++) {
            if (row[w]) return y;
        }
    }
    return m.height();
}

double centroid_row(const MaskGrid& m) {
    std::int64_t sum = 0, count = 0;
    for (int y = 0; y < m.height(); y++) {
        std::int64_t row_count = 0;
        const std::uint64_t* row = m.row_words(y);
        for (int w = 0; w < m.words_per_row(); w++) {
            row_count += std::popcount(row[w]);
        }
        sum += row_count * y;
        count += row_count;
    }
    return double(sum) / double(count);
}

}  // namespace

OrderPrediction order_by_area(const MaskGrid& a, int id_a, const MaskGrid& b, int id_b) {
    require_non_empty(a, "order_by_area");
    require_non_empty(b, "order_by_area");
    const std::int64_t ca = a.count(), cb = b.count();
    if (ca != cb) return front_if(ca < cb);
    return front_if(id_a < id_b);
}

OrderPrediction order_by_yaxis(const MaskGrid& a, int id_a, const MaskGrid& b, int id_b) {
    require_non_empty(a, "order_by_yaxis");
    require_non_empty(b, "order_by_yaxis");
    const int ta = topmost_row(a), tb = topmost_row(b);
    // The mask reaching closer to the top is in back.
    if (ta != tb) return front_if(ta > tb);
    return front_if(id_a < id_b);
}

OrderPrediction order_by_yaxis_centroid(const MaskGrid& a, int id_a, const MaskGrid& b,
                                        int id_b) {
    require_non_empty(a, "order_by_yaxis_centroid");
    require_non_empty(b, "order_by_yaxis_centroid");
    const double ca = centroid_row(a), cb = centroid_row(b);
    if (ca != cb) return front_if(ca > cb);
    return front_if(id_a < id_b);
}

MaskGrid amodal_identity(const MaskGrid& modal) { return modal; }

MaskGrid amodal_hull_expand(const MaskGrid& modal) {
    require_non_empty(modal, "amodal_hull_expand");
    Polygon cloud;
    for (int y = 0; y < modal.height(); y++) {
        for (int x = 0; x < modal.width(); x++) {
            if (modal.get(x, y)) cloud.vertices.push_back({x + 0.5, y + 0.5});
        }
    }
    MaskGrid out = modal;
    if (cloud.vertices.size() >= 3) {
        try {
            const Polygon hull = convex_hull(cloud);
            // Union with the input: centers exactly on the hull boundary
            // would otherwise drop out under the half-open fill rule.
            out |= rasterize(hull, modal.width(), modal.height());
        } catch (const std::invalid_argument&) {
            // Collinear pixel set: the hull degenerates to the mask itself.
        }
    }
    return out;
}

}  // namespace amodal
