#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amodal/render.hpp"
#include "amodal/scene.hpp"

namespace amodal {

enum class ShapeFamily { convex_blob, star, rectangle };

enum class OrderMode {
    strata,            // per-region occlusion strata drawn from strata_targets
    smaller_in_front,  // every overlapping pair has the smaller mask in front
    larger_in_front,   // the reverse planting
};

struct GenConfig {
    std::uint64_t seed = 1;
    int width = 128;
    int height = 128;
    int min_regions = 2;
    int max_regions = 6;
    double min_radius = 10.0;
    double max_radius = 24.0;
    std::array<double, 3> shape_mix{0.4, 0.3, 0.3};        // blob, star, rectangle
    std::array<double, 3> strata_targets{0.39, 0.31, 0.30};  // none, partial, heavy
    OrderMode order_mode = OrderMode::strata;
    int max_place_attempts = 200;
    int max_scene_attempts = 50;
};

// A generated scene together with its reference render (the planted truth:
// per-region occlusion levels and masks from the brute-force engine).
struct GeneratedScene {
    Scene scene;
    SceneRender render;
};

// Deterministic for a fixed config; the emitted scene always validates with
// zero errors. Throws std::runtime_error when the config is infeasible
// after bounded retries, std::invalid_argument for a malformed config.
GeneratedScene generate_scene(const GenConfig& cfg);

// count scenes with per-scene seeds derived from (cfg.seed, index).
std::vector<GeneratedScene> generate_corpus(const GenConfig& cfg, int count);

struct BankEntry {
    std::string name;
    Polygon polygon;
    std::optional<RegionKind> kind;
};

struct OverlayConfig {
    std::uint64_t seed = 1;
    int count = 10;
    int width = 128;
    int height = 128;
    int min_base = 1;
    int max_base = 3;
    int min_paste = 1;
    int max_paste = 3;
    double min_scale = 0.6;
    double max_scale = 1.4;
    int max_place_attempts = 200;
};

// Synthetic occlusion by pasting randomly chosen, translated and scaled bank
// regions in front of mutually disjoint base regions. Throws on an empty
// bank.
std::vector<GeneratedScene> overlay_augment(const std::vector<BankEntry>& bank,
                                            const OverlayConfig& cfg);

// Split-mix style per-index seed derivation shared by corpus generation.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace amodal
