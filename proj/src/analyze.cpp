#include "linex/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

#include "linex/io.hpp"
#include "linex/parallel.hpp"

namespace linex::analyze {

namespace {

// Length of segment [a, b] inside the disk |x - center| <= radius, from the
// quadratic in the segment parameter.
double clipped_length(Vec2 a, Vec2 b, Vec2 center, double radius) {
    const Vec2 d = b - a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return 0.0;
    const Vec2 rel = a - center;
    const double qb = dot(rel, d);                    // half of the linear term
    const double qc = dot(rel, rel) - radius * radius;
    const double disc = qb * qb - len2 * qc;
    if (disc <= 0.0) return 0.0;
    const double sq = std::sqrt(disc);
    const double t0 = std::max(0.0, (-qb - sq) / len2);
    const double t1 = std::min(1.0, (-qb + sq) / len2);
    return t1 > t0 ? (t1 - t0) * std::sqrt(len2) : 0.0;
}

}  // namespace

GrayImage DensityGrid::to_gray() const {
    GeoRef g = georef;
    g.pixel_size = georef.pixel_size * cell_size_px;
    GrayImage img(cols, rows, 0.0, g);
    img.values = fuzzy;
    return img;
}

DensityGrid density(const LineamentSet& set, int cell_size_px, int search_radius_px,
                    int src_width, int src_height) {
    if (src_width < 1 || src_height < 1)
        throw ValidationError("density: empty raster extent");
    if (cell_size_px < 1)
        throw ValidationError("density: cell size must be >= 1 px");
    if (search_radius_px < cell_size_px)
        throw ValidationError("density: search radius must be >= cell size");

    DensityGrid d;
    d.cell_size_px = cell_size_px;
    d.search_radius_px = search_radius_px;
    d.src_width = src_width;
    d.src_height = src_height;
    d.cols = (src_width + cell_size_px - 1) / cell_size_px;
    d.rows = (src_height + cell_size_px - 1) / cell_size_px;
    d.georef = set.georef;
    d.raw.assign(static_cast<std::size_t>(d.cols) * d.rows, 0.0);
    d.fuzzy = d.raw;

    const double radius = search_radius_px;
    par::for_rows(d.rows, [&](int cj) {
        for (int ci = 0; ci < d.cols; ++ci) {
            const Vec2 center{ci * static_cast<double>(cell_size_px) + (cell_size_px - 1) / 2.0,
                              cj * static_cast<double>(cell_size_px) + (cell_size_px - 1) / 2.0};
            double sum = 0.0;
            for (const auto& l : set.lines)
                for (std::size_t s = 1; s < l.vertices.size(); ++s)
                    sum += clipped_length(l.vertices[s - 1], l.vertices[s], center, radius);
            d.raw[static_cast<std::size_t>(cj) * d.cols + ci] = sum * set.georef.pixel_size;
        }
    });

    const auto [lo_it, hi_it] = std::minmax_element(d.raw.begin(), d.raw.end());
    const double lo = *lo_it, hi = *hi_it;
    if (hi > lo)
        for (std::size_t i = 0; i < d.raw.size(); ++i)
            d.fuzzy[i] = (d.raw[i] - lo) / (hi - lo);
    return d;
}

int RoseHistogram::dominant_bin() const {
    if (empty()) return -1;
    int best = 0;
    for (int k = 1; k < 18; ++k)
        if (length_sum[static_cast<std::size_t>(k)] > length_sum[static_cast<std::size_t>(best)])
            best = k;
    return best;
}

std::array<double, 18> RoseHistogram::length_pct() const {
    std::array<double, 18> pct{};
    if (total_length > 0.0)
        for (int k = 0; k < 18; ++k)
            pct[static_cast<std::size_t>(k)] =
                100.0 * length_sum[static_cast<std::size_t>(k)] / total_length;
    return pct;
}

std::array<double, 18> RoseHistogram::count_pct() const {
    std::array<double, 18> pct{};
    if (total_count > 0)
        for (int k = 0; k < 18; ++k)
            pct[static_cast<std::size_t>(k)] =
                100.0 * static_cast<double>(count[static_cast<std::size_t>(k)]) /
                static_cast<double>(total_count);
    return pct;
}

RoseHistogram rose(const LineamentSet& set) {
    RoseHistogram h;
    for (const auto& l : set.lines)
        for (std::size_t s = 1; s < l.vertices.size(); ++s) {
            const Vec2 a = l.vertices[s - 1], b = l.vertices[s];
            const double len = norm(b - a) * set.georef.pixel_size;
            if (len <= 0.0) continue;
            const double az = pixel_azimuth(a, b);
            int bin = static_cast<int>(az / 10.0);
            if (bin > 17) bin = 17;  // az < 180 always; guards FP edge
            h.length_sum[static_cast<std::size_t>(bin)] += len;
            h.count[static_cast<std::size_t>(bin)] += 1;
            h.total_length += len;
            h.total_count += 1;
        }
    return h;
}

CorrelationCurve correlate_occurrences(const DensityGrid& d, const PointSet& pts) {
    CorrelationCurve c;
    for (int i = 0; i <= 20; ++i) c.thresholds.push_back(i * 0.05);

    std::vector<double> values;  // fuzzy value per inside point
    for (const auto& p : pts.points) {
        const double px = (p.x - d.georef.origin_x) / d.georef.pixel_size;
        const double py = (d.georef.origin_y - p.y) / d.georef.pixel_size;
        if (px < 0.0 || px >= d.src_width || py < 0.0 || py >= d.src_height) {
            ++c.n_outside;
            continue;
        }
        const int ci = std::min(d.cols - 1, static_cast<int>(px) / d.cell_size_px);
        const int cj = std::min(d.rows - 1, static_cast<int>(py) / d.cell_size_px);
        values.push_back(d.fuzzy_at(cj, ci));
    }

    const std::size_t total = pts.points.size();
    c.pct_points.resize(c.thresholds.size(), 0.0);
    if (total > 0) {
        for (std::size_t i = 0; i < c.thresholds.size(); ++i) {
            std::size_t qual = 0;
            for (double v : values)
                if (v + 1e-12 >= c.thresholds[i]) ++qual;
            c.pct_points[i] = 100.0 * static_cast<double>(qual) / static_cast<double>(total);
        }
        for (std::size_t i = 0; i + 1 < c.thresholds.size(); ++i)
            c.auc += 0.5 * (c.pct_points[i] + c.pct_points[i + 1]) / 100.0 *
                     (c.thresholds[i + 1] - c.thresholds[i]);
    }
    return c;
}

FccRanking rank_fcc_triplets(const MultibandRaster& r) {
    if (r.bands < 3) throw ValidationError("rank_fcc_triplets: need at least 3 bands");
    const std::size_t nvalid = r.valid_count();
    if (nvalid < 2) throw Error("rank_fcc_triplets: too few valid pixels");
    const int nb = r.bands;

    std::vector<double> mean(static_cast<std::size_t>(nb), 0.0);
    for (int b = 0; b < nb; ++b) {
        const double s = par::chunked_reduce(r.plane(), [&](std::size_t i) {
            return r.valid[i] ? r.samples[b * r.plane() + i] : 0.0;
        });
        mean[static_cast<std::size_t>(b)] = s / static_cast<double>(nvalid);
    }
    std::vector<double> cov(static_cast<std::size_t>(nb) * nb, 0.0);
    for (int a = 0; a < nb; ++a)
        for (int b = a; b < nb; ++b) {
            const double s = par::chunked_reduce(r.plane(), [&](std::size_t i) {
                if (!r.valid[i]) return 0.0;
                return (r.samples[a * r.plane() + i] - mean[static_cast<std::size_t>(a)]) *
                       (r.samples[b * r.plane() + i] - mean[static_cast<std::size_t>(b)]);
            });
            cov[static_cast<std::size_t>(a) * nb + b] = cov[static_cast<std::size_t>(b) * nb + a] =
                s / static_cast<double>(nvalid - 1);
        }

    FccRanking out;
    out.band_stddev.resize(static_cast<std::size_t>(nb));
    for (int b = 0; b < nb; ++b) {
        out.band_stddev[static_cast<std::size_t>(b)] =
            std::sqrt(std::max(0.0, cov[static_cast<std::size_t>(b) * nb + b]));
        if (out.band_stddev[static_cast<std::size_t>(b)] == 0.0)
            out.warnings.push_back("band " + std::to_string(b + 1) +
                                   " is constant; correlations forced to 1");
    }
    const auto corr = [&](int a, int b) {
        const double sa = out.band_stddev[static_cast<std::size_t>(a)];
        const double sb = out.band_stddev[static_cast<std::size_t>(b)];
        if (sa == 0.0 || sb == 0.0) return 1.0;
        return cov[static_cast<std::size_t>(a) * nb + b] / (sa * sb);
    };
    for (int a = 0; a < nb; ++a)
        for (int b = a + 1; b < nb; ++b)
            for (int c = b + 1; c < nb; ++c)
                out.ranked.push_back(
                    {a, b, c,
                     std::fabs(corr(a, b)) + std::fabs(corr(a, c)) + std::fabs(corr(b, c))});
    std::stable_sort(out.ranked.begin(), out.ranked.end(),
                     [](const TripletScore& x, const TripletScore& y) {
                         if (x.score != y.score) return x.score < y.score;
                         return std::tie(x.b0, x.b1, x.b2) < std::tie(y.b0, y.b1, y.b2);
                     });
    return out;
}

void write_rose_csv(const RoseHistogram& h, const std::string& path) {
    std::ostringstream out;
    out << "bin_start_deg,length_sum,length_pct,count,count_pct\n";
    const auto lpct = h.length_pct();
    const auto cpct = h.count_pct();
    for (int k = 0; k < 18; ++k)
        out << k * 10 << ',' << io::format_double(h.length_sum[static_cast<std::size_t>(k)])
            << ',' << io::format_double(lpct[static_cast<std::size_t>(k)]) << ','
            << h.count[static_cast<std::size_t>(k)] << ','
            << io::format_double(cpct[static_cast<std::size_t>(k)]) << "\n";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << out.str();
}

void write_correlation_csv(const CorrelationCurve& c, const std::string& path) {
    std::ostringstream out;
    out << "threshold,pct_points\n";
    for (std::size_t i = 0; i < c.thresholds.size(); ++i)
        out << io::format_double(c.thresholds[i]) << ','
            << io::format_double(c.pct_points[i]) << "\n";
    out << "auc," << io::format_double(c.auc) << "\n";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << out.str();
}

}  // namespace linex::analyze
