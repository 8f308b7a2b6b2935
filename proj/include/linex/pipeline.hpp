#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "linex/common.hpp"

namespace linex::pipeline {

// Every knob of the end-to-end run. Field names double as the config-file
// keys, the JSON keys and the CLI flag names.
struct PipelineConfig {
    std::string input_raster;
    std::string input_dem;     // empty: skip the drainage masking stage
    std::string occurrences;   // empty: skip the occurrence correlation
    std::string out_dir = "out";

    std::string method = "mnf";        // pca | ica | mnf
    std::string mode = "directional";  // directional | laplacian
    std::optional<int> component;      // default: highest-scored

    int filter_radius = 5;
    std::optional<double> edge_gradient;  // default 50 (directional) / 10 (laplacian)
    int curve_length = 50;
    double line_fitting_error = 5;
    double angular_difference = 10;
    double linking_distance = 50;

    std::int64_t min_cells = 1000;
    int buffer_radius_px = 5;

    int cell_size_px = 10;
    int search_radius_px = 50;

    int lee_window = 3;
    std::optional<double> lee_sigma;  // default: estimated from the image
    int median_window = 3;

    std::uint64_t seed = 42;  // ica initialisation
    int threads = 0;          // 0: runtime default
    bool force = false;       // skip parameter range checks

    bool operator==(const PipelineConfig&) const = default;

    double effective_edge_gradient() const {
        return edge_gradient.value_or(mode == "laplacian" ? 10.0 : 50.0);
    }

    // Checks the config-level fields (method/mode names, required paths,
    // window sizes, grid parameters). Stage parameter ranges are enforced by
    // the stages themselves, honouring `force`.
    void validate() const;
};

// Flat `key = value` file, # comments, unknown keys rejected with a line
// number.
PipelineConfig parse_config_file(const std::string& path);

nlohmann::json config_to_json(const PipelineConfig& cfg);
PipelineConfig config_from_json(const nlohmann::json& j);

// Runs read -> reduce -> filter -> enhance -> extract -> drainage mask ->
// analyses, writes all products into cfg.out_dir and returns the run report
// (also written as report.json). A stage failure still writes the report,
// with an "error" object, then rethrows as "stage <name>: <what>".
// Stage wall times appear in the report but are not part of the
// deterministic-output contract; every other product is byte-reproducible.
nlohmann::json run_pipeline(const PipelineConfig& cfg);

}  // namespace linex::pipeline
