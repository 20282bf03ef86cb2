#include "amodal/scene.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "amodal/raster.hpp"

namespace amodal {

const Region* Scene::find_region(int id) const {
    for (const Region& r : regions) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

int Scene::depth_index(int id) const {
    for (std::size_t i = 0; i < regions.size(); i++) {
        if (regions[i].id == id) return int(i);
    }
    return -1;
}

namespace {

std::string validation_error_summary(const ValidationReport& r) {
    std::ostringstream os;
    os << "scene failed validation:";
    for (const ValidationIssue& e : r.errors) {
        os << " [" << e.rule << "] " << e.message << ";";
    }
    return os.str();
}

}  // namespace

SceneValidationError::SceneValidationError(ValidationReport r)
    : std::runtime_error(validation_error_summary(r)), report(std::move(r)) {}

ValidationReport validate_scene(const Scene& s, const ValidationOptions& opts) {
    ValidationReport rep;
    auto error = [&rep](const std::string& rule, int id, std::string msg) {
        rep.errors.push_back({rule, id, std::move(msg)});
    };
    auto warn = [&rep](const std::string& rule, int id, std::string msg) {
        rep.warnings.push_back({rule, id, std::move(msg)});
    };

    std::set<int> seen_ids;
    for (const Region& r : s.regions) {
        if (!seen_ids.insert(r.id).second) {
            error("duplicate-id", r.id,
                  "region id " + std::to_string(r.id) + " appears more than once");
        }
        if (r.name.empty()) {
            error("empty-name", r.id, "region has no semantic name");
        }
        if (r.polygon.vertices.size() < 3) {
            error("degenerate-polygon", r.id, "polygon has fewer than 3 vertices");
            continue;
        }
        if (!polygon_is_finite(r.polygon)) {
            error("nonfinite-coordinate", r.id, "polygon has a non-finite coordinate");
            continue;
        }
        const BBox bb = polygon_bbox(r.polygon);
        if (bb.min_x < 0.0 || bb.min_y < 0.0 || bb.max_x > s.width || bb.max_y > s.height) {
            error("truncation", r.id,
                  "polygon not fully contained within the image boundaries");
        }
        if (self_intersects(r.polygon)) {
            error("self-intersection", r.id, "polygon boundary crosses itself");
        }
    }

    for (std::size_t i = 0; i < s.shared_edges.size(); i++) {
        const SharedEdgeMark& m = s.shared_edges[i];
        const Region* a = s.find_region(m.region_a);
        const Region* b = s.find_region(m.region_b);
        if (m.region_a == m.region_b) {
            error("shared-edge-ref", m.region_a,
                  "shared edge mark " + std::to_string(i) + " joins a region to itself");
        }
        if (a == nullptr || b == nullptr) {
            error("shared-edge-ref", a == nullptr ? m.region_a : m.region_b,
                  "shared edge mark " + std::to_string(i) + " references a missing region");
            continue;
        }
        const int n = int(a->polygon.vertices.size());
        if (m.from_vertex < 0 || m.from_vertex >= n || m.to_vertex < 0 ||
            m.to_vertex >= n || m.from_vertex == m.to_vertex) {
            error("shared-edge-segment", m.region_a,
                  "shared edge mark " + std::to_string(i) +
                      " has vertex indices outside region " +
                      std::to_string(m.region_a) + "'s polygon");
        }
    }

    // Raster warnings only make sense once the scene is structurally sound.
    if (rep.errors.empty() && s.width > 0 && s.height > 0) {
        MaskGrid covered(s.width, s.height);
        for (const Region& r : s.regions) {
            MaskGrid m = rasterize(r.polygon, s.width, s.height);
            const std::int64_t px = m.count();
            if (px < opts.min_region_pixels) {
                warn("min-size", r.id,
                     "region covers " + std::to_string(px) + " pixels, below the " +
                         std::to_string(opts.min_region_pixels) + " pixel minimum");
            }
            covered |= m;
        }
        if (opts.coverage_floor > 0.0 && !s.regions.empty()) {
            const double cov =
                double(covered.count()) / (double(s.width) * double(s.height));
            if (cov < opts.coverage_floor) {
                std::ostringstream os;
                os << "annotation covers " << cov << " of image pixels, below the "
                   << opts.coverage_floor << " floor";
                warn("coverage", -1, os.str());
            }
        }
    }
    return rep;
}

}  // namespace amodal
