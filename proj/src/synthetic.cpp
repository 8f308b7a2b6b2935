#include "linex/synthetic.hpp"

#include <cmath>

#include "linex/rng.hpp"

namespace linex::synth {

SceneSpec default_scene() {
    SceneSpec s;
    s.band_loadings = {1.0, 0.85, 1.1, 0.9, 1.05, 0.95};
    s.band_offsets = {90.0, 102.0, 78.0, 110.0, 96.0, 84.0};
    // Twelve fault traces.  Placement rules: >= 30 px from every border,
    // >= 55 px between near-parallel neighbours (so the linker cannot bridge
    // distinct traces), >= 25 px otherwise, and everything well clear of the
    // drainage corridor at column 60.  Azimuths cluster in [100,110) so that
    // class dominates the rose diagram by a wide margin.
    s.segments.push_back({250.0,  40.0,  90.0, 220.0, 90.0, 2.0, FeatureStyle::step_band, false});
    s.segments.push_back({163.1,  76.7, 105.0, 120.0, 90.0, 2.0, FeatureStyle::step_band, false});
    s.segments.push_back({336.9, 123.3, 105.0, 120.0, 90.0, 2.0, FeatureStyle::step_band, false});
    s.segments.push_back({250.0, 185.0, 105.0, 220.0, 90.0, 2.0, FeatureStyle::step_band, false});
    s.segments.push_back({163.1, 246.7, 105.0, 120.0, 90.0, 2.0, FeatureStyle::step_band, false});
    s.segments.push_back({336.9, 293.3, 105.0, 120.0, 90.0, 2.0, FeatureStyle::step_band, false});
    s.segments.push_back({250.0, 355.0, 105.0, 220.0, 90.0, 2.0, FeatureStyle::step_band, false});
    s.segments.push_back({250.0, 440.0, 105.0, 240.0, 90.0, 2.0, FeatureStyle::step_band, false});
    s.segments.push_back({448.0, 115.0, 165.0, 170.0, 90.0, 2.0, FeatureStyle::step_band, false});
    s.segments.push_back({448.0, 302.0,  15.0, 150.0, 90.0, 2.0, FeatureStyle::step_band, false});
    s.segments.push_back({450.0, 444.0, 170.0,  76.0, 90.0, 2.0, FeatureStyle::step_band, false});
    s.segments.push_back({112.0, 436.0, 160.0,  88.0, 90.0, 2.0, FeatureStyle::step_band, false});
    // Drainage channel along the DEM valley; full image height.
    s.segments.push_back({60.0, 256.0, 0.0, 520.0, 80.0, 2.0, FeatureStyle::ridge, true});
    s.valley_col = 60;
    return s;
}

namespace {

struct Wave {
    double amp, fx, fy, phase;
};

}  // namespace

SyntheticScene make_synthetic(const SceneSpec& spec, std::uint64_t seed) {
    if (spec.width < 1 || spec.height < 1 || spec.bands < 1)
        throw ValidationError("make_synthetic: degenerate scene dimensions");
    std::vector<double> loadings = spec.band_loadings;
    std::vector<double> offsets = spec.band_offsets;
    for (int b = static_cast<int>(loadings.size()); b < spec.bands; ++b)
        loadings.push_back(1.0 + 0.05 * ((b % 2) ? -b : b));
    for (int b = static_cast<int>(offsets.size()); b < spec.bands; ++b)
        offsets.push_back(80.0 + 12.0 * b);

    Rng rng(seed);
    SyntheticScene out;

    // Shared signal: slow background undulation plus the line features.
    std::vector<Wave> waves;
    for (int k = 0; k < 4; ++k) {
        Wave w;
        w.amp = spec.background_amp * rng.uniform(0.5, 1.0);
        w.fx = rng.uniform(-1.0, 1.0) * (2.0 * kPi / 170.0);
        w.fy = rng.uniform(-1.0, 1.0) * (2.0 * kPi / 170.0);
        w.phase = rng.uniform(0.0, 2.0 * kPi);
        waves.push_back(w);
    }

    struct SegGeom {
        Vec2 c, u, n;  // center, along-unit, perpendicular-unit
        double half, contrast, width;
        FeatureStyle style;
    };
    std::vector<SegGeom> geoms;
    for (const auto& s : spec.segments) {
        const double a = to_rad(s.azimuth_deg);
        SegGeom g;
        g.c = {s.cx, s.cy};
        g.u = {std::sin(a), -std::cos(a)};  // rows grow southward
        g.n = {std::cos(a), std::sin(a)};
        g.half = s.length_px / 2.0;
        g.contrast = s.contrast;
        g.width = s.width_px;
        g.style = s.style;
        geoms.push_back(g);
    }

    std::vector<double> signal(static_cast<std::size_t>(spec.width) * spec.height);
    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
            double v = 0.0;
            for (const auto& w : waves) v += w.amp * std::sin(w.fx * x + w.fy * y + w.phase);
            const Vec2 p{static_cast<double>(x), static_cast<double>(y)};
            for (const auto& g : geoms) {
                const Vec2 rel = p - g.c;
                if (std::fabs(dot(rel, g.u)) > g.half) continue;
                const double d = dot(rel, g.n);
                const double core = std::max(0.0, 1.0 - std::fabs(d) / g.width);
                if (g.style == FeatureStyle::ridge) {
                    if (core > 0.0) v += g.contrast * core;
                } else {
                    // sharp tonal flip riding on a wide gentle pedestal: the
                    // center step is strong, the taper too flat to register
                    // as its own edge
                    const double ped =
                        std::max(0.0, 1.0 - std::fabs(d) / (6.0 * g.width));
                    const double amp = 0.85 * core + 0.15 * ped;
                    if (amp > 0.0) v += (d >= 0.0 ? 0.5 : -0.5) * g.contrast * amp;
                }
            }
            signal[static_cast<std::size_t>(y) * spec.width + x] = v;
        }

    out.raster = MultibandRaster(spec.width, spec.height, spec.bands, 0.0, spec.georef);
    for (int b = 0; b < spec.bands; ++b) {
        double* plane = out.raster.samples.data() + b * out.raster.plane();
        for (std::size_t i = 0; i < out.raster.plane(); ++i) {
            double v = offsets[static_cast<std::size_t>(b)] +
                       loadings[static_cast<std::size_t>(b)] * signal[i];
            if (spec.noise_sigma > 0.0) v += rng.normal(0.0, spec.noise_sigma);
            plane[i] = v;
        }
    }

    // DEM: tilted V draining into the valley column, then strictly south.
    int vcol = spec.valley_col;
    if (vcol < 0) {
        vcol = spec.width / 2;
        for (const auto& s : spec.segments)
            if (s.is_stream) vcol = static_cast<int>(std::lround(s.cx));
    }
    out.dem = GrayImage(spec.width, spec.height, 0.0, spec.georef);
    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x)
            out.dem.at(y, x) = spec.dem_base - spec.dem_row_drop * y +
                               spec.dem_valley_gain * std::fabs(x - vcol);

    // Truth: every non-stream segment as a two-vertex pixel polyline.
    out.truth.georef = spec.georef;
    out.truth.provenance = "synthetic-truth";
    int id = 1;
    for (std::size_t k = 0; k < spec.segments.size(); ++k) {
        if (spec.segments[k].is_stream) continue;
        const auto& g = geoms[k];
        Lineament l;
        l.id = id++;
        l.vertices = {g.c - g.half * g.u, g.c + g.half * g.u};
        out.truth.lines.push_back(l);
    }

    // Occurrences scattered perpendicular to randomly chosen truth lines.
    if (!out.truth.lines.empty())
        for (int i = 0; i < spec.n_occurrences; ++i) {
            const auto pick = static_cast<std::size_t>(rng.uniform_int(
                0, static_cast<int>(out.truth.lines.size()) - 1));
            const auto& l = out.truth.lines[pick];
            const Vec2 a = l.vertices.front(), b = l.vertices.back();
            const double t = rng.uniform();
            const double off =
                rng.uniform(-spec.occurrence_spread_px, spec.occurrence_spread_px);
            const Vec2 dir = b - a;
            const double len = norm(dir);
            const Vec2 u = len > 0.0 ? (1.0 / len) * dir : Vec2{1.0, 0.0};
            const Vec2 n{-u.y, u.x};
            const Vec2 p = a + t * dir + off * n;
            const Vec2 w = spec.georef.pixel_to_world(p.x, p.y);
            out.occurrences.points.push_back({w.x, w.y, "occ" + std::to_string(i + 1)});
        }

    return out;
}

}  // namespace linex::synth
