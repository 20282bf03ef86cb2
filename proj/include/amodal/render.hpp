#pragma once

#include <cstdint>
#include <vector>

#include "amodal/mask.hpp"
#include "amodal/scene.hpp"

namespace amodal {

// figure_map cell values besides region ids.
inline constexpr int kFigureNone = -1;
inline constexpr int kFigureShared = -2;

struct RegionRender {
    int id = 0;
    MaskGrid amodal;
    MaskGrid visible;
    // Fraction of amodal area hidden by regions in front; 0 for an empty
    // amodal mask.
    double occlusion = 0.0;
};

struct EdgeMaps {
    MaskGrid visible_edges;
    MaskGrid hidden_edges;
    // Row-major w*h: region id owning the edge pixel's figure side,
    // kFigureShared on marked shared stretches, kFigureNone off edges.
    std::vector<int> figure_map;
};

struct SceneRender {
    int width = 0;
    int height = 0;
    std::vector<RegionRender> regions;  // scene depth order
    MaskGrid visible_edges;
    MaskGrid hidden_edges;
    std::vector<int> figure_map;

    const RegionRender* find_region(int id) const;
};

// Composites depth-ordered amodal masks: visible(i) = amodal(i) minus the
// union of all earlier amodal masks. Validates first and throws
// SceneValidationError when the scene has errors.
SceneRender render_scene(const Scene& s, const ValidationOptions& opts = {});

// Same, without running validation. The scene must be structurally sound.
SceneRender render_scene_unchecked(const Scene& s);

// Boundary pixels of m: set pixels with a 4-neighbor (or the image border)
// outside m.
MaskGrid mask_boundary4(const MaskGrid& m);

// Visible edges with figure-ground labels, plus hidden (occluded) edges.
// render must hold the scene's composited masks.
EdgeMaps extract_edges(const SceneRender& render, const Scene& s);

}  // namespace amodal
