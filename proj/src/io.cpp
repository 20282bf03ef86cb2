#include "amodal/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "amodal/raster.hpp"

namespace amodal {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string index_path(const std::string& base, std::size_t i, const char* field = "") {
    std::string p = base + "[" + std::to_string(i) + "]";
    if (*field) p += std::string(".") + field;
    return p;
}

const json& require_field(const json& obj, const std::string& path, const char* field) {
    if (!obj.is_object() || !obj.contains(field)) {
        throw ParseError(path.empty() ? field : path + "." + field,
                         "missing required field");
    }
    return obj.at(field);
}

int require_int(const json& obj, const std::string& path, const char* field) {
    const json& v = require_field(obj, path, field);
    if (!v.is_number_integer()) {
        throw ParseError(path.empty() ? field : path + "." + field, "expected an integer");
    }
    return v.get<int>();
}

std::string require_string(const json& obj, const std::string& path, const char* field) {
    const json& v = require_field(obj, path, field);
    if (!v.is_string()) {
        throw ParseError(path.empty() ? field : path + "." + field, "expected a string");
    }
    return v.get<std::string>();
}

Polygon parse_flat_polygon(const json& arr, const std::string& path) {
    if (!arr.is_array() || arr.size() < 6 || arr.size() % 2 != 0) {
        throw ParseError(path, "polygon must be a flat [x0,y0,...] array of >= 3 points");
    }
    Polygon p;
    for (std::size_t i = 0; i < arr.size(); i += 2) {
        if (!arr[i].is_number() || !arr[i + 1].is_number()) {
            throw ParseError(path, "polygon coordinates must be numbers");
        }
        p.vertices.push_back({arr[i].get<double>(), arr[i + 1].get<double>()});
    }
    return p;
}

ordered_json flat_polygon(const Polygon& p) {
    ordered_json arr = ordered_json::array();
    for (const Point& v : p.vertices) {
        arr.push_back(round6(v.x));
        arr.push_back(round6(v.y));
    }
    return arr;
}

}  // namespace

Scene parse_scene(const json& doc) {
    if (!doc.is_object()) throw ParseError("", "expected a JSON object");
    const std::string format = require_string(doc, "", "format");
    if (format != kSceneFormat) {
        throw ParseError("format", "unknown format version '" + format + "'");
    }
    Scene s;
    s.width = require_int(doc, "", "width");
    s.height = require_int(doc, "", "height");

    const json& regions = require_field(doc, "", "regions");
    if (!regions.is_array()) throw ParseError("regions", "expected an array");
    for (std::size_t i = 0; i < regions.size(); i++) {
        const std::string path = index_path("regions", i);
        const json& r = regions[i];
        if (!r.is_object()) throw ParseError(path, "expected an object");
        Region region;
        region.id = require_int(r, path, "id");
        region.name = require_string(r, path, "name");
        if (r.contains("kind")) {
            const std::string kind = r.at("kind").is_string()
                                         ? r.at("kind").get<std::string>()
                                         : std::string();
            if (kind == "thing") {
                region.kind = RegionKind::thing;
            } else if (kind == "stuff") {
                region.kind = RegionKind::stuff;
            } else {
                throw ParseError(path + ".kind", "expected \"thing\" or \"stuff\"");
            }
        }
        if (r.contains("is_group")) {
            if (!r.at("is_group").is_boolean()) {
                throw ParseError(path + ".is_group", "expected a boolean");
            }
            region.is_group = r.at("is_group").get<bool>();
        }
        region.polygon =
            parse_flat_polygon(require_field(r, path, "polygon"), path + ".polygon");
        s.regions.push_back(std::move(region));
    }

    if (doc.contains("shared_edges")) {
        const json& marks = doc.at("shared_edges");
        if (!marks.is_array()) throw ParseError("shared_edges", "expected an array");
        for (std::size_t i = 0; i < marks.size(); i++) {
            const std::string path = index_path("shared_edges", i);
            const json& m = marks[i];
            SharedEdgeMark mark;
            mark.region_a = require_int(m, path, "a");
            mark.region_b = require_int(m, path, "b");
            mark.from_vertex = require_int(m, path, "from_vertex");
            mark.to_vertex = require_int(m, path, "to_vertex");
            s.shared_edges.push_back(mark);
        }
    }
    return s;
}

Scene parse_scene_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("", std::string("malformed JSON: ") + e.what());
    }
    return parse_scene(doc);
}

Scene parse_scene_file(const std::string& path) {
    return parse_scene_text(read_text_file(path));
}

ordered_json scene_to_json(const Scene& s) {
    ordered_json doc;
    doc["format"] = kSceneFormat;
    doc["width"] = s.width;
    doc["height"] = s.height;
    doc["regions"] = ordered_json::array();
    for (const Region& r : s.regions) {
        ordered_json jr;
        jr["id"] = r.id;
        jr["name"] = r.name;
        if (r.kind) jr["kind"] = *r.kind == RegionKind::thing ? "thing" : "stuff";
        if (r.is_group) jr["is_group"] = true;
        jr["polygon"] = flat_polygon(r.polygon);
        doc["regions"].push_back(std::move(jr));
    }
    doc["shared_edges"] = ordered_json::array();
    for (const SharedEdgeMark& m : s.shared_edges) {
        doc["shared_edges"].push_back(ordered_json{{"a", m.region_a},
                                                   {"b", m.region_b},
                                                   {"from_vertex", m.from_vertex},
                                                   {"to_vertex", m.to_vertex}});
    }
    return doc;
}

namespace {

std::string dirname_of(const std::string& path) {
    const auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

}  // namespace

PredictionBundle parse_prediction_bundle(
    const std::string& path,
    const std::map<std::string, std::pair<int, int>>& image_dims) {
    json doc;
    try {
        doc = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError("", std::string("malformed JSON: ") + e.what());
    }
    const std::string format = require_string(doc, "", "format");
    if (format != kPredictionFormat) {
        throw ParseError("format", "unknown format version '" + format + "'");
    }
    const std::string base_dir = dirname_of(path);

    PredictionBundle bundle;
    const json& images = require_field(doc, "", "images");
    if (!images.is_array()) throw ParseError("images", "expected an array");
    for (std::size_t i = 0; i < images.size(); i++) {
        const std::string ipath = index_path("images", i);
        const json& img = images[i];
        ImagePredictions preds;
        preds.image_id = require_string(img, ipath, "image");
        const auto dims = image_dims.find(preds.image_id);
        if (dims == image_dims.end()) {
            throw ParseError(ipath + ".image",
                             "image id '" + preds.image_id + "' not in the gt set");
        }
        const auto [w, h] = dims->second;

        const json& proposals = require_field(img, ipath, "proposals");
        if (!proposals.is_array()) throw ParseError(ipath + ".proposals", "expected an array");
        for (std::size_t p = 0; p < proposals.size(); p++) {
            const std::string ppath = index_path(ipath + ".proposals", p);
            const json& prop = proposals[p];
            const json& score = require_field(prop, ppath, "score");
            if (!score.is_number()) throw ParseError(ppath + ".score", "expected a number");
            preds.scores.push_back(score.get<double>());
            if (p > 0 && preds.scores[p] > preds.scores[p - 1]) {
                throw ParseError(ppath + ".score",
                                 "proposals must be ranked by non-increasing score");
            }
            if (prop.contains("polygon")) {
                preds.masks.push_back(rasterize(
                    parse_flat_polygon(prop.at("polygon"), ppath + ".polygon"), w, h));
            } else if (prop.contains("pbm")) {
                if (!prop.at("pbm").is_string()) {
                    throw ParseError(ppath + ".pbm", "expected a path string");
                }
                MaskGrid m = read_pbm(base_dir + "/" + prop.at("pbm").get<std::string>());
                if (m.width() != w || m.height() != h) {
                    throw ParseError(ppath + ".pbm", "bitmap dimensions do not match image");
                }
                preds.masks.push_back(std::move(m));
            } else {
                throw ParseError(ppath, "proposal needs a polygon or pbm field");
            }
        }

        if (img.contains("order_pairs")) {
            const json& pairs = img.at("order_pairs");
            if (!pairs.is_array()) throw ParseError(ipath + ".order_pairs", "expected an array");
            for (std::size_t k = 0; k < pairs.size(); k++) {
                const std::string kpath = index_path(ipath + ".order_pairs", k);
                const json& pr = pairs[k];
                OrderVerdictRecord rec;
                rec.a = require_int(pr, kpath, "a");
                rec.b = require_int(pr, kpath, "b");
                const std::string front = require_string(pr, kpath, "front");
                if (front != "a" && front != "b") {
                    throw ParseError(kpath + ".front", "expected \"a\" or \"b\"");
                }
                rec.a_front = front == "a";
                if (pr.contains("confidence")) {
                    if (!pr.at("confidence").is_number()) {
                        throw ParseError(kpath + ".confidence", "expected a number");
                    }
                    rec.confidence = pr.at("confidence").get<double>();
                }
                const int np = int(preds.masks.size());
                if (rec.a < 0 || rec.a >= np || rec.b < 0 || rec.b >= np || rec.a == rec.b) {
                    throw ParseError(kpath, "pair ranks out of range");
                }
                preds.order_pairs.push_back(rec);
            }
        }
        bundle.images.push_back(std::move(preds));
    }
    return bundle;
}

MaskGrid read_pbm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot open PBM file");
    std::string magic;
    in >> magic;
    if (magic != "P1" && magic != "P4") throw ParseError(path, "not a PBM file");
    auto next_token = [&in, &path]() {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
        throw ParseError(path, "truncated PBM header");
    };
    const int w = std::stoi(next_token());
    const int h = std::stoi(next_token());
    if (w <= 0 || h <= 0) throw ParseError(path, "bad PBM dimensions");
    MaskGrid m(w, h);
    if (magic == "P1") {
        for (int y = 0; y < h; y++) {
            for (int x = 0; x < w; x++) {
                const std::string tok = next_token();
                if (tok != "0" && tok != "1") throw ParseError(path, "bad P1 digit");
                if (tok == "1") m.set(x, y);
            }
        }
    } else {
        in.get();  // single whitespace after the header
        const int row_bytes = (w + 7) / 8;
        std::vector<char> row(row_bytes);
        for (int y = 0; y < h; y++) {
            in.read(row.data(), row_bytes);
            if (!in) throw ParseError(path, "truncated P4 payload");
            for (int x = 0; x < w; x++) {
                if ((row[x >> 3] >> (7 - (x & 7))) & 1) m.set(x, y);
            }
        }
    }
    return m;
}

void write_pbm(const MaskGrid& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "P4\n" << m.width() << " " << m.height() << "\n";
    const int row_bytes = (m.width() + 7) / 8;
    std::vector<char> row(row_bytes);
    for (int y = 0; y < m.height(); y++) {
        std::fill(row.begin(), row.end(), 0);
        for (int x = 0; x < m.width(); x++) {
            if (m.get(x, y)) row[x >> 3] |= char(1 << (7 - (x & 7)));
        }
        out.write(row.data(), row_bytes);
    }
}

SoftEdgeMap read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot open PGM file");
    std::string magic;
    in >> magic;
    if (magic != "P2" && magic != "P5") throw ParseError(path, "not a PGM file");
    auto next_token = [&in, &path]() {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
        throw ParseError(path, "truncated PGM header");
    };
    const int w = std::stoi(next_token());
    const int h = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) {
        throw ParseError(path, "bad PGM header");
    }
    SoftEdgeMap m;
    m.width = w;
    m.height = h;
    m.values.resize(std::size_t(w) * h);
    if (magic == "P2") {
        for (auto& v : m.values) v = std::stod(next_token()) / maxval;
    } else {
        in.get();
        const int bytes = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> buf(std::size_t(w) * h * bytes);
        in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size()));
        if (!in) throw ParseError(path, "truncated P5 payload");
        for (std::size_t i = 0; i < m.values.size(); i++) {
            const int raw = bytes == 1 ? buf[i] : (buf[2 * i] << 8) | buf[2 * i + 1];
            m.values[i] = double(raw) / maxval;
        }
    }
    return m;
}

void write_pgm(const SoftEdgeMap& m, const std::string& path, int maxval) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "P5\n" << m.width << " " << m.height << "\n" << maxval << "\n";
    for (double v : m.values) {
        const double clamped = std::min(1.0, std::max(0.0, v));
        out.put(char(int(std::lround(clamped * maxval))));
    }
}

double round6(double v) {
    const double r = std::round(v * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r;  // normalize -0
}

namespace {

ordered_json issues_to_json(const std::vector<ValidationIssue>& issues) {
    ordered_json arr = ordered_json::array();
    for (const ValidationIssue& i : issues) {
        arr.push_back(ordered_json{
            {"rule", i.rule}, {"region", i.region_id}, {"message", i.message}});
    }
    return arr;
}

ordered_json hist_to_json(const std::vector<std::int64_t>& hist) {
    ordered_json arr = ordered_json::array();
    for (std::int64_t v : hist) arr.push_back(v);
    return arr;
}

ordered_json opt_to_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return round6(*v);
}

}  // namespace

ordered_json validation_report_to_json(const ValidationReport& r) {
    ordered_json doc;
    doc["format"] = kReportFormat;
    doc["type"] = "validation";
    doc["ok"] = r.ok();
    doc["errors"] = issues_to_json(r.errors);
    doc["warnings"] = issues_to_json(r.warnings);
    return doc;
}

ordered_json render_summary_to_json(const SceneRender& r) {
    ordered_json doc;
    doc["format"] = kReportFormat;
    doc["type"] = "render";
    doc["width"] = r.width;
    doc["height"] = r.height;
    doc["regions"] = ordered_json::array();
    for (const RegionRender& rr : r.regions) {
        doc["regions"].push_back(ordered_json{{"id", rr.id},
                                              {"amodal_pixels", rr.amodal.count()},
                                              {"visible_pixels", rr.visible.count()},
                                              {"occlusion", round6(rr.occlusion)}});
    }
    doc["visible_edge_pixels"] = r.visible_edges.count();
    doc["hidden_edge_pixels"] = r.hidden_edges.count();
    return doc;
}

ordered_json stats_to_json(const StatsSummary& s) {
    ordered_json doc;
    doc["format"] = kReportFormat;
    doc["type"] = "stats";
    doc["scene_count"] = s.scene_count;
    doc["region_count"] = s.region_count;
    doc["regions_per_annotation"] = round6(s.regions_per_annotation);
    doc["points_per_region"] = round6(s.points_per_region);
    doc["pixel_coverage_amodal"] = round6(s.pixel_coverage_amodal);
    doc["pixel_coverage_visible"] = round6(s.pixel_coverage_visible);
    doc["occlusion_rate"] = round6(s.occlusion_rate);
    doc["mean_occlusion"] = round6(s.mean_occlusion);
    doc["edge_density"] = round6(s.edge_density);
    doc["mean_convexity"] = round6(s.mean_convexity);
    doc["mean_simplicity"] = round6(s.mean_simplicity);
    doc["strata_counts"] = ordered_json{{"none", s.strata_counts[0]},
                                        {"partial", s.strata_counts[1]},
                                        {"heavy", s.strata_counts[2]}};
    ordered_json occ = ordered_json::array();
    for (std::int64_t v : s.occlusion_hist) occ.push_back(v);
    doc["occlusion_hist"] = std::move(occ);
    doc["cc_count_hist"] = hist_to_json(s.cc_count_hist);
    doc["cc_size_hist"] = hist_to_json(s.cc_size_hist);
    doc["depth_layers_hist"] = hist_to_json(s.depth_layers_hist);
    return doc;
}

ordered_json consistency_to_json(const std::vector<double>& scores,
                                 const std::string& mode) {
    ordered_json doc;
    doc["format"] = kReportFormat;
    doc["type"] = "consistency";
    doc["mode"] = mode;
    doc["pair_count"] = scores.size();
    double sum = 0.0;
    ordered_json arr = ordered_json::array();
    for (double f : scores) {
        arr.push_back(round6(f));
        sum += f;
    }
    doc["mean_f"] = scores.empty() ? 0.0 : round6(sum / double(scores.size()));
    doc["f_scores"] = std::move(arr);
    return doc;
}

ordered_json ar_to_json(const ARReport& r) {
    ordered_json doc;
    doc["format"] = kReportFormat;
    doc["type"] = "average-recall";
    doc["ar_all"] = round6(r.ar_all);
    doc["ar_none"] = opt_to_json(r.ar_none);
    doc["ar_partial"] = opt_to_json(r.ar_partial);
    doc["ar_heavy"] = opt_to_json(r.ar_heavy);
    ordered_json curve = ordered_json::array();
    for (std::size_t t = 0; t < kArThresholds.size(); t++) {
        curve.push_back(ordered_json{{"iou_threshold", round6(kArThresholds[t])},
                                     {"recall", round6(r.recall_curve[t])}});
    }
    doc["recall_curve"] = std::move(curve);
    doc["gt_count"] = r.gt_count;
    doc["counts"] = ordered_json{{"none", r.none_count},
                                 {"partial", r.partial_count},
                                 {"heavy", r.heavy_count}};
    return doc;
}

ordered_json order_to_json(const OrderEvalReport& r, const std::string& orderer) {
    ordered_json doc;
    doc["format"] = kReportFormat;
    doc["type"] = "depth-order";
    doc["orderer"] = orderer;
    doc["accuracy"] = opt_to_json(r.accuracy);
    doc["evaluated_pairs"] = r.evaluated_pairs;
    doc["overlapping_gt_pairs"] = r.overlapping_gt_pairs;
    doc["pair_recall"] = round6(r.pair_recall);
    return doc;
}

ordered_json edge_bench_to_json(const EdgeBenchReport& r) {
    ordered_json doc;
    doc["format"] = kReportFormat;
    doc["type"] = "edge-benchmark";
    doc["ods"] = round6(r.ods);
    doc["ap"] = round6(r.ap);
    doc["r50"] = round6(r.r50);
    ordered_json curve = ordered_json::array();
    for (const ThresholdPRF& pt : r.curve) {
        curve.push_back(ordered_json{{"threshold", round6(pt.threshold)},
                                     {"precision", round6(pt.prf.precision)},
                                     {"recall", round6(pt.prf.recall)},
                                     {"f", round6(pt.prf.f)}});
    }
    doc["curve"] = std::move(curve);
    return doc;
}

ordered_json human_edges_to_json(const std::vector<PRF>& scores) {
    ordered_json doc;
    doc["format"] = kReportFormat;
    doc["type"] = "human-edges";
    ordered_json arr = ordered_json::array();
    double p = 0, r = 0, f = 0;
    for (std::size_t i = 0; i < scores.size(); i++) {
        arr.push_back(ordered_json{{"annotator", i},
                                   {"precision", round6(scores[i].precision)},
                                   {"recall", round6(scores[i].recall)},
                                   {"f", round6(scores[i].f)}});
        p += scores[i].precision;
        r += scores[i].recall;
        f += scores[i].f;
    }
    const double n = scores.empty() ? 1.0 : double(scores.size());
    doc["mean_precision"] = round6(p / n);
    doc["mean_recall"] = round6(r / n);
    doc["mean_f"] = round6(f / n);
    doc["annotators"] = std::move(arr);
    return doc;
}

ordered_json truth_to_json(const GeneratedScene& g) {
    ordered_json doc;
    doc["format"] = kTruthFormat;
    doc["regions"] = ordered_json::array();
    for (std::size_t i = 0; i < g.render.regions.size(); i++) {
        const RegionRender& rr = g.render.regions[i];
        const double q = rr.occlusion;
        const char* stratum = q <= 0.0 ? "none" : (q <= 0.25 ? "partial" : "heavy");
        doc["regions"].push_back(ordered_json{{"id", rr.id},
                                              {"depth_index", i},
                                              {"occlusion", round6(q)},
                                              {"stratum", stratum},
                                              {"amodal_pixels", rr.amodal.count()},
                                              {"visible_pixels", rr.visible.count()}});
    }
    return doc;
}

std::string stats_histograms_csv(const StatsSummary& s) {
    std::ostringstream os;
    os << "histogram,bin,count\n";
    for (std::size_t i = 0; i < s.occlusion_hist.size(); i++) {
        os << "occlusion_level," << i << "," << s.occlusion_hist[i] << "\n";
    }
    for (std::size_t i = 0; i < s.cc_count_hist.size(); i++) {
        os << "cc_count," << i << "," << s.cc_count_hist[i] << "\n";
    }
    for (std::size_t i = 0; i < s.cc_size_hist.size(); i++) {
        os << "cc_size," << i << "," << s.cc_size_hist[i] << "\n";
    }
    for (std::size_t i = 0; i < s.depth_layers_hist.size(); i++) {
        os << "depth_layers," << i << "," << s.depth_layers_hist[i] << "\n";
    }
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string dump_json(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace amodal
