#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "linex/analyze.hpp"
#include "linex/dimred.hpp"
#include "linex/hydro.hpp"
#include "linex/io.hpp"
#include "linex/pipeline.hpp"
#include "linex/scoring.hpp"
#include "linex/synthetic.hpp"
#include "linex/vectorize.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace linex;

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

int env_threads() {
    const char* s = std::getenv("LINEAMENT_THREADS");
    if (!s || !*s) return 0;
    return std::atoi(s);
}

// ---- run -----------------------------------------------------------------

struct RunArgs {
    std::string config_path;
    pipeline::PipelineConfig cfg;
};

void add_run(CLI::App& app, RunArgs& a) {
    CLI::App* run = app.add_subcommand("run", "full raster-to-lineaments pipeline");
    run->add_option("--config", a.config_path, "key = value config file");
    auto& c = a.cfg;
    run->add_option("--input_raster", c.input_raster, "multiband .bsq input");
    run->add_option("--input_dem", c.input_dem, "DEM .asc for drainage masking");
    run->add_option("--occurrences", c.occurrences, "occurrence points .csv");
    run->add_option("--out_dir", c.out_dir, "output directory");
    run->add_option("--method", c.method, "pca | ica | mnf");
    run->add_option("--mode", c.mode, "directional | laplacian");
    run->add_option("--component", [&c](const CLI::results_t& r) {
        c.component = std::stoi(r[0]); return true; }, "component index (default: best)");
    run->add_option("--filter_radius", c.filter_radius, "gaussian radius, px");
    run->add_option("--edge_gradient", [&c](const CLI::results_t& r) {
        c.edge_gradient = std::stod(r[0]); return true; }, "hysteresis high threshold");
    run->add_option("--curve_length", c.curve_length, "min chain pixels");
    run->add_option("--line_fitting_error", c.line_fitting_error, "polyline tolerance, px");
    run->add_option("--angular_difference", c.angular_difference, "link angle limit, deg");
    run->add_option("--linking_distance", c.linking_distance, "link gap limit, px");
    run->add_option("--min_cells", c.min_cells, "stream accumulation threshold");
    run->add_option("--buffer_radius_px", c.buffer_radius_px, "stream buffer radius");
    run->add_option("--cell_size_px", c.cell_size_px, "density cell size");
    run->add_option("--search_radius_px", c.search_radius_px, "density search radius");
    run->add_option("--lee_window", c.lee_window, "adaptive filter window");
    run->add_option("--lee_sigma", [&c](const CLI::results_t& r) {
        c.lee_sigma = std::stod(r[0]); return true; }, "noise stddev (default: estimated)");
    run->add_option("--median_window", c.median_window, "median filter window");
    run->add_option("--seed", c.seed, "ica initialisation seed");
    run->add_option("--threads", c.threads, "worker threads (0 = default)");
    run->add_flag("--force", c.force, "skip parameter range checks");

    run->callback([&a, run]() {
        pipeline::PipelineConfig cfg;
        if (!a.config_path.empty()) cfg = pipeline::parse_config_file(a.config_path);
        // explicit flags win over the config file
        const auto take = [&](const char* flag, auto member) {
            if (run->count(flag) > 0) cfg.*member = a.cfg.*member;
        };
        take("--input_raster", &pipeline::PipelineConfig::input_raster);
        take("--input_dem", &pipeline::PipelineConfig::input_dem);
        take("--occurrences", &pipeline::PipelineConfig::occurrences);
        take("--out_dir", &pipeline::PipelineConfig::out_dir);
        take("--method", &pipeline::PipelineConfig::method);
        take("--mode", &pipeline::PipelineConfig::mode);
        take("--component", &pipeline::PipelineConfig::component);
        take("--filter_radius", &pipeline::PipelineConfig::filter_radius);
        take("--edge_gradient", &pipeline::PipelineConfig::edge_gradient);
        take("--curve_length", &pipeline::PipelineConfig::curve_length);
        take("--line_fitting_error", &pipeline::PipelineConfig::line_fitting_error);
        take("--angular_difference", &pipeline::PipelineConfig::angular_difference);
        take("--linking_distance", &pipeline::PipelineConfig::linking_distance);
        take("--min_cells", &pipeline::PipelineConfig::min_cells);
        take("--buffer_radius_px", &pipeline::PipelineConfig::buffer_radius_px);
        take("--cell_size_px", &pipeline::PipelineConfig::cell_size_px);
        take("--search_radius_px", &pipeline::PipelineConfig::search_radius_px);
        take("--lee_window", &pipeline::PipelineConfig::lee_window);
        take("--lee_sigma", &pipeline::PipelineConfig::lee_sigma);
        take("--median_window", &pipeline::PipelineConfig::median_window);
        take("--seed", &pipeline::PipelineConfig::seed);
        take("--threads", &pipeline::PipelineConfig::threads);
        take("--force", &pipeline::PipelineConfig::force);
        if (cfg.threads == 0) cfg.threads = env_threads();
        const json report = pipeline::run_pipeline(cfg);
        std::cout << report.dump(2) << "\n";
    });
}

// ---- dimred --------------------------------------------------------------

void add_dimred(CLI::App& app) {
    auto* sc = app.add_subcommand("dimred", "band reduction to component planes");
    auto input = std::make_shared<std::string>();
    auto out_dir = std::make_shared<std::string>("out");
    auto method = std::make_shared<std::string>("mnf");
    auto seed = std::make_shared<std::uint64_t>(42);
    auto component = std::make_shared<int>(-1);
    sc->add_option("--input", *input, "multiband .bsq")->required();
    sc->add_option("--out_dir", *out_dir, "output directory");
    sc->add_option("--method", *method, "pca | ica | mnf");
    sc->add_option("--seed", *seed, "ica initialisation seed");
    sc->add_option("--component", *component, "plane to export (-1: best)");
    sc->callback([=]() {
        const auto r = io::read_multiband(*input);
        dimred::ComponentStack stack;
        json info;
        info["method"] = *method;
        if (*method == "pca") {
            const auto pr = dimred::pca(dimred::to_data_matrix(r));
            stack = dimred::transform(r, pr.projection, pr.eigenvalues);
            info["eigenvalues"] = pr.eigenvalues;
        } else if (*method == "ica") {
            dimred::IcaOptions opt;
            opt.seed = *seed;
            const auto ir = dimred::fast_ica(dimred::to_data_matrix(r), opt);
            stack = dimred::transform(r, ir.unmixing);
            info["converged"] = ir.converged;
            info["iterations"] = ir.iterations;
        } else if (*method == "mnf") {
            dimred::MnfResult det;
            stack = dimred::mnf(r, &det);
            info["noise_condition"] = det.noise_condition;
        } else {
            throw ValidationError("method must be pca, ica or mnf");
        }
        info["scores"] = stack.scores;
        fs::create_directories(*out_dir);
        io::write_multiband(stack.components, join(*out_dir, "components.bsq"));
        std::optional<int> pick;
        if (*component >= 0) pick = *component;
        io::write_ascii_grid(dimred::select_component(stack, pick),
                             join(*out_dir, "component.asc"));
        std::cout << info.dump(2) << "\n";
    });
}

// ---- extract -------------------------------------------------------------

void add_extract(CLI::App& app) {
    auto* sc = app.add_subcommand("extract", "edge detection and line vectorization "
                                             "on one enhanced grayscale image");
    auto input = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>("lineaments.geojson");
    auto p = std::make_shared<vectorize::ExtractionParams>();
    auto force = std::make_shared<bool>(false);
    sc->add_option("--input", *input, "grayscale .asc")->required();
    sc->add_option("--out", *out, "output GeoJSON path");
    sc->add_option("--filter_radius", p->filter_radius, "gaussian radius, px");
    sc->add_option("--edge_gradient", p->edge_gradient, "hysteresis high threshold");
    sc->add_option("--curve_length", p->curve_length, "min chain pixels");
    sc->add_option("--line_fitting_error", p->line_fitting_error, "polyline tolerance");
    sc->add_option("--angular_difference", p->angular_difference, "link angle limit");
    sc->add_option("--linking_distance", p->linking_distance, "link gap limit");
    sc->add_flag("--force", *force, "skip parameter range checks");
    sc->callback([=]() {
        const auto img = io::read_ascii_grid(*input);
        const auto set = vectorize::extract(img, *p, *force);
        io::write_lineaments(set, *out, io::VectorFormat::geojson);
        std::cout << json{{"lineaments", set.size()},
                          {"pixel_length", set.total_pixel_length()}}
                         .dump(2)
                  << "\n";
    });
}

// ---- hydro ---------------------------------------------------------------

void add_hydro(CLI::App& app) {
    auto* sc = app.add_subcommand("hydro", "drainage extraction and stream masking");
    auto dem_path = std::make_shared<std::string>();
    auto lines_path = std::make_shared<std::string>();
    auto out_dir = std::make_shared<std::string>("out");
    auto min_cells = std::make_shared<std::int64_t>(1000);
    auto buffer_px = std::make_shared<int>(5);
    sc->add_option("--dem", *dem_path, "DEM .asc")->required();
    sc->add_option("--lineaments", *lines_path, "GeoJSON to mask against the streams");
    sc->add_option("--out_dir", *out_dir, "output directory");
    sc->add_option("--min_cells", *min_cells, "stream accumulation threshold");
    sc->add_option("--buffer_radius_px", *buffer_px, "stream buffer radius");
    sc->callback([=]() {
        const auto dem = io::read_ascii_grid(*dem_path);
        const auto flow = hydro::d8_flow(hydro::fill_sinks(dem));
        const auto sm = hydro::streams(flow, *min_cells);
        fs::create_directories(*out_dir);
        io::write_ascii_grid(sm.to_gray(), join(*out_dir, "streams.asc"));
        json info{{"stream_cells", sm.cell_count()}};
        if (!lines_path->empty()) {
            const auto set = io::read_lineaments_geojson(*lines_path);
            const auto buf = hydro::buffer(sm, *buffer_px);
            const auto kept = hydro::remove_stream_lineaments(set, buf);
            io::write_lineaments(kept, join(*out_dir, "lineaments_masked.geojson"),
                                 io::VectorFormat::geojson);
            info["lineaments_in"] = set.size();
            info["lineaments_kept"] = kept.size();
        }
        std::cout << info.dump(2) << "\n";
    });
}

// ---- analyze -------------------------------------------------------------

void add_analyze(CLI::App& app) {
    auto* sc = app.add_subcommand("analyze", "density, azimuth and occurrence "
                                             "statistics for a lineament set");
    auto lines_path = std::make_shared<std::string>();
    auto occ_path = std::make_shared<std::string>();
    auto out_dir = std::make_shared<std::string>("out");
    auto width = std::make_shared<int>(0);
    auto height = std::make_shared<int>(0);
    auto cell = std::make_shared<int>(10);
    auto radius = std::make_shared<int>(50);
    sc->add_option("--lineaments", *lines_path, "GeoJSON lineaments")->required();
    sc->add_option("--width", *width, "source raster width, px")->required();
    sc->add_option("--height", *height, "source raster height, px")->required();
    sc->add_option("--occurrences", *occ_path, "occurrence points .csv");
    sc->add_option("--out_dir", *out_dir, "output directory");
    sc->add_option("--cell_size_px", *cell, "density cell size");
    sc->add_option("--search_radius_px", *radius, "density search radius");
    sc->callback([=]() {
        const auto set = io::read_lineaments_geojson(*lines_path);
        fs::create_directories(*out_dir);
        const auto dens = analyze::density(set, *cell, *radius, *width, *height);
        io::write_ascii_grid(dens.to_gray(), join(*out_dir, "density.asc"));
        const auto hist = analyze::rose(set);
        analyze::write_rose_csv(hist, join(*out_dir, "rose.csv"));
        json info{{"dominant_bin", hist.dominant_bin()},
                  {"total_length_world", hist.total_length}};
        if (!occ_path->empty()) {
            const auto curve =
                analyze::correlate_occurrences(dens, io::read_occurrences(*occ_path));
            analyze::write_correlation_csv(curve, join(*out_dir, "correlation.csv"));
            info["auc"] = curve.auc;
            info["points_outside"] = curve.n_outside;
        }
        std::cout << info.dump(2) << "\n";
    });
}

// ---- synth ---------------------------------------------------------------

void add_synth(CLI::App& app) {
    auto* sc = app.add_subcommand("synth", "generate the stock synthetic test scene");
    auto out_dir = std::make_shared<std::string>("scene");
    auto seed = std::make_shared<std::uint64_t>(7);
    auto noise = std::make_shared<double>(5.0);
    sc->add_option("--out_dir", *out_dir, "output directory");
    sc->add_option("--seed", *seed, "scene random seed");
    sc->add_option("--noise_sigma", *noise, "per-band additive noise stddev");
    sc->callback([=]() {
        auto spec = synth::default_scene();
        spec.noise_sigma = *noise;
        const auto scene = synth::make_synthetic(spec, *seed);
        fs::create_directories(*out_dir);
        io::write_multiband(scene.raster, join(*out_dir, "raster.bsq"));
        io::write_ascii_grid(scene.dem, join(*out_dir, "dem.asc"));
        io::write_occurrences(scene.occurrences, join(*out_dir, "occurrences.csv"));
        io::write_lineaments(scene.truth, join(*out_dir, "truth.geojson"),
                             io::VectorFormat::geojson);
        std::cout << json{{"width", scene.raster.width},
                          {"height", scene.raster.height},
                          {"bands", scene.raster.bands},
                          {"truth_lines", scene.truth.size()},
                          {"occurrences", scene.occurrences.points.size()}}
                         .dump(2)
                  << "\n";
    });
}

// ---- score ---------------------------------------------------------------

void add_score(CLI::App& app) {
    auto* sc = app.add_subcommand("score", "length-based agreement of an extracted "
                                           "set against ground truth");
    auto found_path = std::make_shared<std::string>();
    auto truth_path = std::make_shared<std::string>();
    auto tol = std::make_shared<double>(3.0);
    sc->add_option("--found", *found_path, "extracted lineaments GeoJSON")->required();
    sc->add_option("--truth", *truth_path, "ground-truth GeoJSON")->required();
    sc->add_option("--tol", *tol, "match tolerance, px");
    sc->callback([=]() {
        const auto found = io::read_lineaments_geojson(*found_path);
        const auto truth = io::read_lineaments_geojson(*truth_path);
        const auto m = score::score_against_truth(found, truth, *tol);
        std::cout << json{{"recall_len", m.recall_len},
                          {"precision_len", m.precision_len},
                          {"azimuth_err_deg", m.azimuth_err_deg},
                          {"total_truth_len", m.total_truth_len},
                          {"total_found_len", m.total_found_len}}
                         .dump(2)
                  << "\n";
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geological lineament extraction from multiband rasters"};
    app.require_subcommand(1);

    RunArgs run_args;
    add_run(app, run_args);
    add_dimred(app);
    add_extract(app);
    add_hydro(app);
    add_analyze(app);
    add_synth(app);
    add_score(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const linex::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
