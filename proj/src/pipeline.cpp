#include "linex/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "linex/analyze.hpp"
#include "linex/detect.hpp"
#include "linex/dimred.hpp"
#include "linex/enhance.hpp"
#include "linex/hydro.hpp"
#include "linex/io.hpp"
#include "linex/parallel.hpp"
#include "linex/vectorize.hpp"

namespace linex::pipeline {

using nlohmann::json;

void PipelineConfig::validate() const {
    if (input_raster.empty())
        throw ValidationError("config: input_raster is required");
    if (method != "pca" && method != "ica" && method != "mnf")
        throw ValidationError("config: method must be pca, ica or mnf");
    if (mode != "directional" && mode != "laplacian")
        throw ValidationError("config: mode must be directional or laplacian");
    if (component && *component < 0)
        throw ValidationError("config: component must be >= 0");
    if (lee_window != 3 && lee_window != 5 && lee_window != 7)
        throw ValidationError("config: lee_window must be 3, 5 or 7");
    if (median_window != 3 && median_window != 5)
        throw ValidationError("config: median_window must be 3 or 5");
    if (lee_sigma && *lee_sigma < 0.0)
        throw ValidationError("config: lee_sigma must be >= 0");
    if (cell_size_px < 1)
        throw ValidationError("config: cell_size_px must be >= 1");
    if (search_radius_px < cell_size_px)
        throw ValidationError("config: search_radius_px must be >= cell_size_px");
    if (min_cells < 1)
        throw ValidationError("config: min_cells must be >= 1");
    if (buffer_radius_px < 0)
        throw ValidationError("config: buffer_radius_px must be >= 0");
}

namespace {

long long parse_int(const std::string& s, const std::string& where) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw ValidationError(where + ": not an integer: '" + s + "'");
    }
    if (pos != s.size())
        throw ValidationError(where + ": not an integer: '" + s + "'");
    return v;
}

double parse_num(const std::string& s, const std::string& where) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ValidationError(where + ": not a number: '" + s + "'");
    }
    if (pos != s.size())
        throw ValidationError(where + ": not a number: '" + s + "'");
    return v;
}

bool parse_bool(const std::string& s, const std::string& where) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ValidationError(where + ": not a bool: '" + s + "'");
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void apply_key(PipelineConfig& c, const std::string& key, const std::string& val,
               const std::string& where) {
    if (key == "input_raster") c.input_raster = val;
    else if (key == "input_dem") c.input_dem = val;
    else if (key == "occurrences") c.occurrences = val;
    else if (key == "out_dir") c.out_dir = val;
    else if (key == "method") c.method = val;
    else if (key == "mode") c.mode = val;
    else if (key == "component") c.component = static_cast<int>(parse_int(val, where));
    else if (key == "filter_radius") c.filter_radius = static_cast<int>(parse_int(val, where));
    else if (key == "edge_gradient") c.edge_gradient = parse_num(val, where);
    else if (key == "curve_length") c.curve_length = static_cast<int>(parse_int(val, where));
    else if (key == "line_fitting_error") c.line_fitting_error = parse_num(val, where);
    else if (key == "angular_difference") c.angular_difference = parse_num(val, where);
    else if (key == "linking_distance") c.linking_distance = parse_num(val, where);
    else if (key == "min_cells") c.min_cells = parse_int(val, where);
    else if (key == "buffer_radius_px") c.buffer_radius_px = static_cast<int>(parse_int(val, where));
    else if (key == "cell_size_px") c.cell_size_px = static_cast<int>(parse_int(val, where));
    else if (key == "search_radius_px") c.search_radius_px = static_cast<int>(parse_int(val, where));
    else if (key == "lee_window") c.lee_window = static_cast<int>(parse_int(val, where));
    else if (key == "lee_sigma") c.lee_sigma = parse_num(val, where);
    else if (key == "median_window") c.median_window = static_cast<int>(parse_int(val, where));
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(parse_int(val, where));
    else if (key == "threads") c.threads = static_cast<int>(parse_int(val, where));
    else if (key == "force") c.force = parse_bool(val, where);
    else throw ValidationError(where + ": unknown key '" + key + "'");
}

}  // namespace

PipelineConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    PipelineConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        const std::string where = path + ":" + std::to_string(lineno);
        if (eq == std::string::npos)
            throw ValidationError(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ValidationError(where + ": empty key");
        apply_key(c, key, val, where);
    }
    return c;
}

json config_to_json(const PipelineConfig& c) {
    json j;
    j["input_raster"] = c.input_raster;
    j["input_dem"] = c.input_dem;
    j["occurrences"] = c.occurrences;
    j["out_dir"] = c.out_dir;
    j["method"] = c.method;
    j["mode"] = c.mode;
    if (c.component) j["component"] = *c.component;
    j["filter_radius"] = c.filter_radius;
    if (c.edge_gradient) j["edge_gradient"] = *c.edge_gradient;
    j["curve_length"] = c.curve_length;
    j["line_fitting_error"] = c.line_fitting_error;
    j["angular_difference"] = c.angular_difference;
    j["linking_distance"] = c.linking_distance;
    j["min_cells"] = c.min_cells;
    j["buffer_radius_px"] = c.buffer_radius_px;
    j["cell_size_px"] = c.cell_size_px;
    j["search_radius_px"] = c.search_radius_px;
    j["lee_window"] = c.lee_window;
    if (c.lee_sigma) j["lee_sigma"] = *c.lee_sigma;
    j["median_window"] = c.median_window;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["force"] = c.force;
    return j;
}

PipelineConfig config_from_json(const json& j) {
    PipelineConfig c;
    c.input_raster = j.value("input_raster", c.input_raster);
    c.input_dem = j.value("input_dem", c.input_dem);
    c.occurrences = j.value("occurrences", c.occurrences);
    c.out_dir = j.value("out_dir", c.out_dir);
    c.method = j.value("method", c.method);
    c.mode = j.value("mode", c.mode);
    if (j.contains("component")) c.component = j["component"].get<int>();
    c.filter_radius = j.value("filter_radius", c.filter_radius);
    if (j.contains("edge_gradient")) c.edge_gradient = j["edge_gradient"].get<double>();
    c.curve_length = j.value("curve_length", c.curve_length);
    c.line_fitting_error = j.value("line_fitting_error", c.line_fitting_error);
    c.angular_difference = j.value("angular_difference", c.angular_difference);
    c.linking_distance = j.value("linking_distance", c.linking_distance);
    c.min_cells = j.value("min_cells", c.min_cells);
    c.buffer_radius_px = j.value("buffer_radius_px", c.buffer_radius_px);
    c.cell_size_px = j.value("cell_size_px", c.cell_size_px);
    c.search_radius_px = j.value("search_radius_px", c.search_radius_px);
    c.lee_window = j.value("lee_window", c.lee_window);
    if (j.contains("lee_sigma")) c.lee_sigma = j["lee_sigma"].get<double>();
    c.median_window = j.value("median_window", c.median_window);
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
    c.force = j.value("force", c.force);
    return c;
}

namespace {

class StageClock {
public:
    void start() { t0_ = std::chrono::steady_clock::now(); }
    double stop_ms() const {
        const auto dt = std::chrono::steady_clock::now() - t0_;
        return std::chrono::duration<double, std::milli>(dt).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

}  // namespace

json run_pipeline(const PipelineConfig& cfg) {
    json report;
    report["config"] = config_to_json(cfg);
    report["warnings"] = json::array();
    std::string stage = "setup";

    const auto out_path = [&](const std::string& name) {
        return (std::filesystem::path(cfg.out_dir) / name).string();
    };
    const auto write_report = [&]() {
        std::ofstream f(out_path("report.json"), std::ios::binary);
        if (f) f << report.dump(2) << "\n";
    };

    try {
        cfg.validate();
        std::filesystem::create_directories(cfg.out_dir);
        par::set_threads(cfg.threads);
        if (cfg.edge_gradient &&
            *cfg.edge_gradient != (cfg.mode == "laplacian" ? 10.0 : 50.0))
            report["warnings"].push_back(
                "edge_gradient " + io::format_double(*cfg.edge_gradient) +
                " is non-default for mode " + cfg.mode);

        StageClock clock;
        json timings;

        // ---- read ------------------------------------------------------
        stage = "read";
        clock.start();
        MultibandRaster raster = io::read_multiband(cfg.input_raster);
        GrayImage dem;
        const bool have_dem = !cfg.input_dem.empty();
        if (have_dem) dem = io::read_ascii_grid(cfg.input_dem);
        PointSet occ;
        const bool have_occ = !cfg.occurrences.empty();
        if (have_occ) occ = io::read_occurrences(cfg.occurrences);
        timings["read"] = clock.stop_ms();
        report["input"] = {{"width", raster.width},
                           {"height", raster.height},
                           {"bands", raster.bands},
                           {"valid_pixels", raster.valid_count()}};

        // ---- reduce ----------------------------------------------------
        stage = "reduce";
        clock.start();
        dimred::ComponentStack stack;
        json reduce_info;
        reduce_info["method"] = cfg.method;
        if (cfg.method == "pca") {
            const auto dm = dimred::to_data_matrix(raster);
            const auto pr = dimred::pca(dm);
            stack = dimred::transform(raster, pr.projection, pr.eigenvalues);
            reduce_info["eigenvalues"] = pr.eigenvalues;
            reduce_info["jacobi_rotations"] = pr.jacobi_rotations;
        } else if (cfg.method == "ica") {
            const auto dm = dimred::to_data_matrix(raster);
            dimred::IcaOptions opt;
            opt.seed = cfg.seed;
            const auto ir = dimred::fast_ica(dm, opt);
            if (!ir.converged)
                report["warnings"].push_back("fastica did not converge, using best iterate");
            stack = dimred::transform(raster, ir.unmixing);
            reduce_info["converged"] = ir.converged;
            reduce_info["iterations"] = ir.iterations;
            reduce_info["abs_kurtosis"] = stack.scores;
        } else {
            dimred::MnfResult det;
            stack = dimred::mnf(raster, &det);
            reduce_info["snr_eigenvalues"] = det.snr;
            reduce_info["noise_condition"] = det.noise_condition;
            reduce_info["ridge"] = det.ridge;
        }
        const int comp = cfg.component.value_or(0);
        GrayImage gray = dimred::select_component(stack, comp);
        reduce_info["component"] = comp;
        timings["reduce"] = clock.stop_ms();
        report["reduce"] = reduce_info;

        // ---- filter ----------------------------------------------------
        stage = "filter";
        clock.start();
        GrayImage filtered = enhance::lee_filter(gray, cfg.lee_window, cfg.lee_sigma);
        filtered = enhance::median_filter(filtered, cfg.median_window);
        timings["filter"] = clock.stop_ms();

        // ---- enhance ---------------------------------------------------
        stage = "enhance";
        clock.start();
        std::vector<GrayImage> enhanced;
        json kernel_names = json::array();
        if (cfg.mode == "directional") {
            for (int az : {0, 45, 90, 135}) {
                const auto k = enhance::directional_kernel(az);
                enhanced.push_back(rescale_to_255(enhance::convolve(filtered, k)));
                kernel_names.push_back(k.name);
            }
        } else {
            const auto k = enhance::laplacian_kernel();
            enhanced.push_back(rescale_to_255(enhance::convolve(filtered, k)));
            kernel_names.push_back(k.name);
        }
        timings["enhance"] = clock.stop_ms();
        report["enhance"] = {{"mode", cfg.mode}, {"kernels", kernel_names}};

        // ---- extract ---------------------------------------------------
        stage = "extract";
        clock.start();
        vectorize::ExtractionParams ep;
        ep.filter_radius = cfg.filter_radius;
        ep.edge_gradient = cfg.effective_edge_gradient();
        ep.curve_length = cfg.curve_length;
        ep.line_fitting_error = cfg.line_fitting_error;
        ep.angular_difference = cfg.angular_difference;
        ep.linking_distance = cfg.linking_distance;
        LineamentSet raw;
        if (cfg.mode == "directional") {
            raw = vectorize::extract_directional(enhanced, ep, cfg.force);
        } else {
            raw = vectorize::extract(enhanced.front(), ep, cfg.force);
            raw.provenance = "laplacian";
        }
        raw.georef = raster.georef;
        io::write_lineaments(raw, out_path("lineaments_raw.geojson"),
                             io::VectorFormat::geojson);
        timings["extract"] = clock.stop_ms();
        report["extract"] = {{"raw_count", raw.size()},
                             {"raw_pixel_length", raw.total_pixel_length()},
                             {"edge_gradient", ep.edge_gradient}};

        // ---- drainage --------------------------------------------------
        stage = "drainage";
        LineamentSet lines = raw;
        if (have_dem) {
            clock.start();
            if (!dem.georef.same_grid(raster.georef) || dem.width != raster.width ||
                dem.height != raster.height)
                throw ValidationError("DEM grid does not match the input raster");
            const GrayImage filled = hydro::fill_sinks(dem);
            const hydro::FlowGrid flow = hydro::d8_flow(filled);
            const hydro::StreamMask sm = hydro::streams(flow, cfg.min_cells);
            io::write_ascii_grid(sm.to_gray(), out_path("streams.asc"));
            const hydro::StreamMask buf = hydro::buffer(sm, cfg.buffer_radius_px);
            lines = hydro::remove_stream_lineaments(lines, buf);
            timings["drainage"] = clock.stop_ms();
            report["drainage"] = {{"stream_cells", sm.cell_count()},
                                  {"buffered_cells", buf.cell_count()},
                                  {"removed", raw.size() - lines.size()}};
        }
        io::write_lineaments(lines, out_path("lineaments.geojson"),
                             io::VectorFormat::geojson);
        report["lineaments"] = {{"count", lines.size()},
                                {"pixel_length", lines.total_pixel_length()}};

        // ---- analyze ---------------------------------------------------
        stage = "analyze";
        clock.start();
        const auto dens = analyze::density(lines, cfg.cell_size_px, cfg.search_radius_px,
                                           raster.width, raster.height);
        io::write_ascii_grid(dens.to_gray(), out_path("density.asc"));
        const auto hist = analyze::rose(lines);
        analyze::write_rose_csv(hist, out_path("rose.csv"));
        json analyze_info = {{"dominant_bin", hist.dominant_bin()},
                             {"total_length_world", hist.total_length}};
        if (have_occ) {
            const auto curve = analyze::correlate_occurrences(dens, occ);
            analyze::write_correlation_csv(curve, out_path("correlation.csv"));
            analyze_info["auc"] = curve.auc;
            analyze_info["points_outside"] = curve.n_outside;
        }
        timings["analyze"] = clock.stop_ms();
        report["analyze"] = analyze_info;

        report["timings_ms"] = timings;
        write_report();
        return report;
    } catch (const std::exception& e) {
        report["error"] = {{"stage", stage}, {"message", e.what()}};
        write_report();
        throw Error("stage " + stage + ": " + e.what());
    }
}

}  // namespace linex::pipeline
