#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amodal/geometry.hpp"

namespace amodal {

enum class RegionKind { thing, stuff };

// One named amodal region. The polygon marks the full region extent,
// occluded parts included.
struct Region {
    int id = 0;
    std::string name;
    Polygon polygon;
    std::optional<RegionKind> kind;
    bool is_group = false;
};

// A stretch of region_a's boundary, from vertex from_vertex to to_vertex
// (forward along the ring), shared with region_b. Shared edges have no
// figure-ground side.
struct SharedEdgeMark {
    int region_a = 0;
    int region_b = 0;
    int from_vertex = 0;
    int to_vertex = 0;
};

// Full annotation of one image. Regions are listed in depth order,
// index 0 frontmost: for overlapping regions the occluder precedes the
// occludee. Non-overlapping regions may appear in any order.
struct Scene {
    int width = 0;
    int height = 0;
    std::vector<Region> regions;
    std::vector<SharedEdgeMark> shared_edges;

    const Region* find_region(int id) const;
    // Position in the depth order, -1 if absent.
    int depth_index(int id) const;
};

struct ValidationIssue {
    std::string rule;
    int region_id = -1;  // -1 for scene-level issues
    std::string message;
};

// Errors reject a scene downstream; warnings never block.
struct ValidationReport {
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> warnings;
    bool ok() const { return errors.empty(); }
};

struct ValidationOptions {
    // Regions rasterizing below this many pixels draw a "min-size" warning.
    std::int64_t min_region_pixels = 600;
    // Fraction of image pixels that should be covered by at least one
    // region; below it a "coverage" warning is emitted. 0 disables.
    double coverage_floor = 0.5;
};

// Rule ids: "empty-name", "degenerate-polygon", "nonfinite-coordinate",
// "truncation", "self-intersection", "duplicate-id", "shared-edge-ref",
// "shared-edge-segment"; warnings: "min-size", "coverage".
ValidationReport validate_scene(const Scene& s, const ValidationOptions& opts = {});

struct SceneValidationError : std::runtime_error {
    explicit SceneValidationError(ValidationReport r);
    ValidationReport report;
};

}  // namespace amodal
