#include "amodal/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "amodal/raster.hpp"
#include "amodal/reference.hpp"
#include "amodal/stats.hpp"

namespace amodal {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {

// Thin wrapper around mt19937_64 with explicit conversions, so generated
// bytes do not depend on library-specific distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive
        const std::uint64_t n = std::uint64_t(hi - lo) + 1;
        return lo + int((unsigned __int128)(eng_()) * n >> 64);
    }

    int categorical(const std::array<double, 3>& p) {
        const double u = uniform();
        if (u < p[0]) return 0;
        if (u < p[0] + p[1]) return 1;
        return 2;
    }

private:
    std::mt19937_64 eng_;
};

void check_config(const GenConfig& cfg) {
    auto sum3 = [](const std::array<double, 3>& p) { return p[0] + p[1] + p[2]; };
    if (std::abs(sum3(cfg.shape_mix) - 1.0) > 1e-9 ||
        std::abs(sum3(cfg.strata_targets) - 1.0) > 1e-9) {
        throw std::invalid_argument("GenConfig: probabilities must sum to 1");
    }
    if (cfg.min_regions < 1 || cfg.max_regions < cfg.min_regions) {
        throw std::invalid_argument("GenConfig: empty region count range");
    }
    if (cfg.min_radius <= 0.0 || cfg.max_radius < cfg.min_radius) {
        throw std::invalid_argument("GenConfig: empty radius range");
    }
    if (cfg.width <= 0 || cfg.height <= 0) {
        throw std::invalid_argument("GenConfig: empty image");
    }
    if (2.0 * cfg.max_radius >= std::min(cfg.width, cfg.height)) {
        throw std::invalid_argument("GenConfig: max_radius does not fit the image");
    }
}

// All shapes have circumradius exactly or at most r, so a center kept
// r away from the borders keeps the polygon fully inside the image.
Polygon make_shape(ShapeFamily family, double cx, double cy, double r, Rng& rng) {
    Polygon p;
    const double two_pi = 2.0 * std::numbers::pi;
    switch (family) {
        case ShapeFamily::convex_blob: {
            const int m = rng.uniform_int(8, 14);
            const double rot = rng.uniform(0.0, two_pi);
            std::vector<Point> pts;
            for (int i = 0; i < m; i++) {
                const double ang = rot + two_pi * (i + rng.uniform(-0.3, 0.3)) / m;
                const double rad = r * rng.uniform(0.7, 1.0);
                pts.push_back({cx + rad * std::cos(ang), cy + rad * std::sin(ang)});
            }
            p.vertices = convex_hull(Polygon{pts}).vertices;
            break;
        }
        case ShapeFamily::star: {
            const int spikes = rng.uniform_int(5, 8);
            const double rot = rng.uniform(0.0, two_pi);
            const double inner = r * rng.uniform(0.35, 0.55);
            for (int i = 0; i < 2 * spikes; i++) {
                const double ang = rot + two_pi * i / (2.0 * spikes);
                const double rad = (i % 2 == 0) ? r : inner;
                p.vertices.push_back({cx + rad * std::cos(ang), cy + rad * std::sin(ang)});
            }
            break;
        }
        case ShapeFamily::rectangle: {
            const double phi = rng.uniform(0.35, std::numbers::pi / 2.0 - 0.35);
            const double a = r * std::cos(phi), b = r * std::sin(phi);
            const double rot = rng.uniform(0.0, std::numbers::pi);
            const double c = std::cos(rot), s = std::sin(rot);
            const double corners[4][2] = {{a, b}, {-a, b}, {-a, -b}, {a, -b}};
            for (const auto& q : corners) {
                p.vertices.push_back({cx + q[0] * c - q[1] * s, cy + q[0] * s + q[1] * c});
            }
            break;
        }
    }
    return p;
}

ShapeFamily sample_family(const GenConfig& cfg, Rng& rng) {
    switch (rng.categorical(cfg.shape_mix)) {
        case 0:
            return ShapeFamily::convex_blob;
        case 1:
            return ShapeFamily::star;
        default:
            return ShapeFamily::rectangle;
    }
}

const char* family_name(ShapeFamily f) {
    switch (f) {
        case ShapeFamily::convex_blob:
            return "blob";
        case ShapeFamily::star:
            return "star";
        default:
            return "rect";
    }
}

std::optional<RegionKind> family_kind(ShapeFamily f) {
    return f == ShapeFamily::rectangle ? RegionKind::stuff : RegionKind::thing;
}

// Uniformly chosen set pixel, by rank scan.
std::pair<int, int> sample_covered_pixel(const MaskGrid& covered, Rng& rng) {
    const std::int64_t total = covered.count();
    std::int64_t target = rng.uniform_int(0, int(total - 1));
    for (int y = 0; y < covered.height(); y++) {
        for (int x = 0; x < covered.width(); x++) {
            if (covered.get(x, y) && target-- == 0) return {x, y};
        }
    }
    return {covered.width() / 2, covered.height() / 2};  // unreachable
}

struct Placement {
    Region region;
    MaskGrid raster;
    double occlusion = 0.0;
};

// One region whose occlusion against the already-covered area lands in the
// requested stratum.
std::optional<Placement> place_for_stratum(const GenConfig& cfg, OcclusionStratum target,
                                           const MaskGrid& covered, int id, Rng& rng) {
    for (int attempt = 0; attempt < cfg.max_place_attempts; attempt++) {
        const ShapeFamily family = sample_family(cfg, rng);
        const double r = rng.uniform(cfg.min_radius, cfg.max_radius);
        const double lo_x = r, hi_x = cfg.width - r;
        const double lo_y = r, hi_y = cfg.height - r;
        double cx, cy;
        if (target == OcclusionStratum::none || !covered.any()) {
            cx = rng.uniform(lo_x, hi_x);
            cy = rng.uniform(lo_y, hi_y);
        } else {
            const auto [ax, ay] = sample_covered_pixel(covered, rng);
            double dist, ang = rng.uniform(0.0, 2.0 * std::numbers::pi);
            if (target == OcclusionStratum::heavy) {
                dist = rng.uniform(0.0, 0.5) * r;
            } else {
                dist = rng.uniform(0.9, 1.7) * r;
            }
            cx = std::clamp(ax + 0.5 + dist * std::cos(ang), lo_x, hi_x);
            cy = std::clamp(ay + 0.5 + dist * std::sin(ang), lo_y, hi_y);
        }
        Polygon poly = make_shape(family, cx, cy, r, rng);
        MaskGrid raster = rasterize(poly, cfg.width, cfg.height);
        const std::int64_t area = raster.count();
        if (area == 0) continue;
        const double q = double(intersection_count(raster, covered)) / double(area);
        if (occlusion_stratum(q) != target) continue;

        Placement out;
        out.region.id = id;
        out.region.name = std::string(family_name(family)) + "-" + std::to_string(id);
        out.region.kind = family_kind(family);
        out.region.polygon = std::move(poly);
        out.raster = std::move(raster);
        out.occlusion = q;
        return out;
    }
    return std::nullopt;
}

std::optional<Scene> try_strata_scene(const GenConfig& cfg, Rng& rng) {
    const int k = rng.uniform_int(cfg.min_regions, cfg.max_regions);

    // Draw per-region strata from the target distribution. The frontmost
    // region is unoccludable, so at least one slot must be "none"; when the
    // draw has none, one uniformly chosen slot is overwritten (a small bias
    // that stays well inside the corpus tolerance for sane region counts).
    std::vector<OcclusionStratum> strata(k);
    bool has_none = false;
    for (int i = 0; i < k; i++) {
        strata[i] = OcclusionStratum(rng.categorical(cfg.strata_targets));
        has_none |= strata[i] == OcclusionStratum::none;
    }
    if (!has_none) strata[rng.uniform_int(0, k - 1)] = OcclusionStratum::none;
    // Unoccluded regions first keeps placement feasible: occluded regions
    // then always have covered area in front of them.
    std::sort(strata.begin(), strata.end(),
              [](OcclusionStratum a, OcclusionStratum b) { return int(a) < int(b); });

    Scene scene;
    scene.width = cfg.width;
    scene.height = cfg.height;
    MaskGrid covered(cfg.width, cfg.height);
    for (int i = 0; i < k; i++) {
        auto placed = place_for_stratum(cfg, strata[i], covered, i + 1, rng);
        if (!placed) return std::nullopt;
        covered |= placed->raster;
        scene.regions.push_back(std::move(placed->region));
    }
    return scene;
}

std::optional<Scene> try_area_ordered_scene(const GenConfig& cfg, Rng& rng) {
    const int k = rng.uniform_int(cfg.min_regions, cfg.max_regions);
    const double grow = 1.3;
    const double base_r = cfg.min_radius;
    if (base_r * std::pow(grow, k - 1) * 2.0 >= std::min(cfg.width, cfg.height)) {
        throw std::invalid_argument(
            "GenConfig: area-ordered stack does not fit the image");
    }

    Scene scene;
    scene.width = cfg.width;
    scene.height = cfg.height;
    std::vector<MaskGrid> rasters;
    double cx = 0, cy = 0;
    for (int i = 0; i < k; i++) {
        const double r = base_r * std::pow(grow, i);
        bool ok = false;
        for (int attempt = 0; attempt < cfg.max_place_attempts && !ok; attempt++) {
            double px, py;
            if (i == 0) {
                px = rng.uniform(r, cfg.width - r);
                py = rng.uniform(r, cfg.height - r);
            } else {
                px = std::clamp(cx + rng.uniform(-0.3, 0.3) * r, r, cfg.width - r);
                py = std::clamp(cy + rng.uniform(-0.3, 0.3) * r, r, cfg.height - r);
            }
            Polygon poly = make_shape(sample_family(cfg, rng), px, py, r, rng);
            MaskGrid raster = rasterize(poly, cfg.width, cfg.height);
            // Strictly growing raster area and overlap with every earlier
            // region keep the area heuristic exact on all evaluated pairs.
            bool valid = raster.count() > (rasters.empty() ? 0 : rasters.back().count());
            for (const MaskGrid& prev : rasters) {
                valid = valid && raster.count() > prev.count() &&
                        intersection_count(raster, prev) > 0;
            }
            if (!valid) continue;
            Region region;
            region.id = i + 1;
            region.name = "stack-" + std::to_string(i + 1);
            region.kind = RegionKind::thing;
            region.polygon = std::move(poly);
            scene.regions.push_back(std::move(region));
            rasters.push_back(std::move(raster));
            cx = px;
            cy = py;
            ok = true;
        }
        if (!ok) return std::nullopt;
    }
    if (cfg.order_mode == OrderMode::larger_in_front) {
        std::reverse(scene.regions.begin(), scene.regions.end());
    }
    return scene;
}

}  // namespace

GeneratedScene generate_scene(const GenConfig& cfg) {
    check_config(cfg);
    for (int attempt = 0; attempt < cfg.max_scene_attempts; attempt++) {
        Rng rng(derive_seed(cfg.seed, attempt));
        std::optional<Scene> scene = cfg.order_mode == OrderMode::strata
                                         ? try_strata_scene(cfg, rng)
                                         : try_area_ordered_scene(cfg, rng);
        if (!scene) continue;
        ValidationReport rep = validate_scene(*scene);
        if (!rep.ok()) continue;
        GeneratedScene out;
        out.render = reference_render(*scene);
        out.scene = std::move(*scene);
        return out;
    }
    throw std::runtime_error("generate_scene: config infeasible after bounded retries");
}

std::vector<GeneratedScene> generate_corpus(const GenConfig& cfg, int count) {
    check_config(cfg);
    std::vector<GeneratedScene> out(count);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; i++) {
        try {
            GenConfig per = cfg;
            per.seed = derive_seed(cfg.seed, std::uint64_t(i) + 0x100000);
            out[i] = generate_scene(per);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<GeneratedScene> overlay_augment(const std::vector<BankEntry>& bank,
                                            const OverlayConfig& cfg) {
    if (bank.empty()) throw std::invalid_argument("overlay_augment: empty bank");
    if (cfg.min_base < 1 || cfg.max_base < cfg.min_base || cfg.min_paste < 0 ||
        cfg.max_paste < cfg.min_paste || cfg.min_scale <= 0.0 ||
        cfg.max_scale < cfg.min_scale) {
        throw std::invalid_argument("overlay_augment: malformed config");
    }

    std::vector<GeneratedScene> out;
    for (int index = 0; index < cfg.count; index++) {
        Rng rng(derive_seed(cfg.seed, std::uint64_t(index)));

        // A bank polygon scaled and translated so its bbox lands fully
        // inside the image; nullopt when it cannot fit.
        auto place_entry = [&](const BankEntry& entry) -> std::optional<Polygon> {
            const BBox bb = polygon_bbox(entry.polygon);
            const double bw = bb.max_x - bb.min_x, bh = bb.max_y - bb.min_y;
            if (bw <= 0.0 || bh <= 0.0) return std::nullopt;
            double smax = std::min({cfg.max_scale, cfg.width / bw, cfg.height / bh});
            if (smax < cfg.min_scale) return std::nullopt;
            const double s = rng.uniform(cfg.min_scale, smax);
            const double tx = rng.uniform(0.0, cfg.width - s * bw);
            const double ty = rng.uniform(0.0, cfg.height - s * bh);
            Polygon p;
            for (const Point& v : entry.polygon.vertices) {
                p.vertices.push_back({(v.x - bb.min_x) * s + tx, (v.y - bb.min_y) * s + ty});
            }
            return p;
        };

        Scene scene;
        scene.width = cfg.width;
        scene.height = cfg.height;

        // Mutually disjoint base regions; any relative order would do.
        const int n_base = rng.uniform_int(cfg.min_base, cfg.max_base);
        std::vector<Region> bases;
        MaskGrid base_union(cfg.width, cfg.height);
        for (int b = 0; b < n_base; b++) {
            for (int attempt = 0; attempt < cfg.max_place_attempts; attempt++) {
                const BankEntry& entry = bank[rng.uniform_int(0, int(bank.size()) - 1)];
                auto poly = place_entry(entry);
                if (!poly) continue;
                MaskGrid raster = rasterize(*poly, cfg.width, cfg.height);
                if (raster.count() == 0 || intersection_count(raster, base_union) > 0) {
                    continue;
                }
                base_union |= raster;
                Region region;
                region.name = entry.name;
                region.kind = entry.kind;
                region.polygon = std::move(*poly);
                bases.push_back(std::move(region));
                break;
            }
        }
        if (bases.empty()) {
            throw std::runtime_error("overlay_augment: could not place any base region");
        }

        const int n_paste = rng.uniform_int(cfg.min_paste, cfg.max_paste);
        for (int p = 0; p < n_paste; p++) {
            for (int attempt = 0; attempt < cfg.max_place_attempts; attempt++) {
                const BankEntry& entry = bank[rng.uniform_int(0, int(bank.size()) - 1)];
                auto poly = place_entry(entry);
                if (!poly) continue;
                Region region;
                region.name = entry.name;
                region.kind = entry.kind;
                region.polygon = std::move(*poly);
                scene.regions.push_back(std::move(region));  // pasted: frontmost block
                break;
            }
        }
        for (Region& base : bases) scene.regions.push_back(std::move(base));
        for (std::size_t i = 0; i < scene.regions.size(); i++) {
            scene.regions[i].id = int(i) + 1;
        }

        GeneratedScene g;
        g.render = reference_render(scene);
        g.scene = std::move(scene);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace amodal
