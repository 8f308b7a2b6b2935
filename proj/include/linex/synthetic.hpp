#pragma once

#include <cstdint>
#include <vector>

#include "linex/lineament.hpp"
#include "linex/raster.hpp"

namespace linex::synth {

enum class FeatureStyle {
    step_band,  // antisymmetric brightness flip across the line (a fault trace)
    ridge       // symmetric bright ramp (a drainage channel)
};

struct SyntheticSegment {
    double cx = 0.0;  // center, pixel coordinates
    double cy = 0.0;
    double azimuth_deg = 0.0;  // [0, 180)
    double length_px = 100.0;
    double contrast = 90.0;  // DN swing across / on the feature
    double width_px = 1.5;   // ramp half-width of the profile
    FeatureStyle style = FeatureStyle::step_band;
    bool is_stream = false;  // drawn in the raster but excluded from truth
};

struct SceneSpec {
    int width = 512;
    int height = 512;
    int bands = 6;
    double noise_sigma = 5.0;
    double background_amp = 12.0;  // low-frequency undulation, DN
    std::vector<double> band_loadings;  // default: spread around 1
    std::vector<double> band_offsets;   // default: staggered baselines
    std::vector<SyntheticSegment> segments;

    // Analytic DEM: base - row_drop * row + valley_gain * |col - valley_col|,
    // a tilted V whose axis drains strictly southward.
    double dem_base = 2000.0;
    double dem_row_drop = 0.5;
    double dem_valley_gain = 0.3;
    int valley_col = -1;  // -1: column of the stream segment, else width/2

    int n_occurrences = 40;
    double occurrence_spread_px = 5.0;  // perpendicular scatter around truth

    GeoRef georef{500000.0, 4200000.0, 30.0, "EPSG:32636"};
};

struct SyntheticScene {
    MultibandRaster raster;
    GrayImage dem;
    PointSet occurrences;  // world coordinates
    LineamentSet truth;    // 2-vertex pixel-coordinate lines, streams excluded
};

// Stock scene used by the tests and the synth CLI: twelve fault traces, most
// of them striking in [100, 110) degrees, plus a meridional stream channel in
// the DEM valley at column 60.
SceneSpec default_scene();

SyntheticScene make_synthetic(const SceneSpec& spec, std::uint64_t seed);

}  // namespace linex::synth
