#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "amodal/eval.hpp"
#include "amodal/render.hpp"
#include "amodal/scene.hpp"
#include "amodal/stats.hpp"
#include "amodal/synth.hpp"

namespace amodal {

// Parse failure pointing at the offending document path, e.g.
// "regions[0].name".
struct ParseError : std::runtime_error {
    ParseError(std::string path_in, const std::string& what)
        : std::runtime_error(path_in + ": " + what), path(std::move(path_in)) {}
    std::string path;
};

inline constexpr const char* kSceneFormat = "amodal-v1";
inline constexpr const char* kPredictionFormat = "amodal-pred-v1";
inline constexpr const char* kReportFormat = "amodal-report-v1";
inline constexpr const char* kTruthFormat = "amodal-truth-v1";
inline constexpr const char* kManifestFormat = "amodal-manifest-v1";

// Scene documents (amodal-v1). Parsing is structural only; semantic rules
// live in validate_scene.
Scene parse_scene(const nlohmann::json& doc);
Scene parse_scene_text(const std::string& text);
Scene parse_scene_file(const std::string& path);
nlohmann::ordered_json scene_to_json(const Scene& s);

// Ranked per-image proposals (amodal-pred-v1). Masks come as COCO-style
// flat polygon arrays rasterized at the ground-truth image dimensions or as
// PBM files referenced relative to base_dir. image_dims keys are the gt
// image ids; referencing an unknown id is an error, as is a score order
// that increases.
struct OrderVerdictRecord {
    int a = 0;  // proposal ranks
    int b = 0;
    bool a_front = true;
    double confidence = 1.0;
};

struct ImagePredictions {
    std::string image_id;
    std::vector<double> scores;  // non-increasing
    std::vector<MaskGrid> masks;
    std::vector<OrderVerdictRecord> order_pairs;
};

struct PredictionBundle {
    std::vector<ImagePredictions> images;
};

PredictionBundle parse_prediction_bundle(
    const std::string& path,
    const std::map<std::string, std::pair<int, int>>& image_dims);

// Uncompressed bitmaps: PBM (P1/P4 read, P4 write) for masks, PGM (P2/P5
// read, P5 write) for soft edge maps scaled by maxval.
MaskGrid read_pbm(const std::string& path);
void write_pbm(const MaskGrid& m, const std::string& path);
SoftEdgeMap read_pgm(const std::string& path);
void write_pgm(const SoftEdgeMap& m, const std::string& path, int maxval = 255);

// Report documents. All floating-point fields are rounded to 6 decimals so
// the serialized bytes are stable across platforms and thread counts.
double round6(double v);
nlohmann::ordered_json validation_report_to_json(const ValidationReport& r);
nlohmann::ordered_json render_summary_to_json(const SceneRender& r);
nlohmann::ordered_json stats_to_json(const StatsSummary& s);
nlohmann::ordered_json consistency_to_json(const std::vector<double>& scores,
                                           const std::string& mode);
nlohmann::ordered_json ar_to_json(const ARReport& r);
nlohmann::ordered_json order_to_json(const OrderEvalReport& r,
                                     const std::string& orderer);
nlohmann::ordered_json edge_bench_to_json(const EdgeBenchReport& r);
nlohmann::ordered_json human_edges_to_json(const std::vector<PRF>& scores);
nlohmann::ordered_json truth_to_json(const GeneratedScene& g);

// Occlusion, CC-size and depth-layer histograms as CSV text.
std::string stats_histograms_csv(const StatsSummary& s);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Canonical serialization: 2-space indent plus trailing newline.
std::string dump_json(const nlohmann::ordered_json& doc);

}  // namespace amodal
