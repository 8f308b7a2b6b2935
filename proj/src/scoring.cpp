#include "linex/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace linex::score {

namespace {

struct Seg {
    Vec2 a, b;
    double az;
};

std::vector<Seg> segments_of(const LineamentSet& set) {
    std::vector<Seg> segs;
    for (const auto& l : set.lines)
        for (std::size_t s = 1; s < l.vertices.size(); ++s) {
            const Vec2 a = l.vertices[s - 1], b = l.vertices[s];
            if (norm(b - a) <= 0.0) continue;
            segs.push_back({a, b, pixel_azimuth(a, b)});
        }
    return segs;
}

double point_seg_dist(Vec2 p, const Seg& s) {
    const Vec2 d = s.b - s.a;
    const double len2 = dot(d, d);
    double t = dot(p - s.a, d) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (s.a + t * d));
}

// Walks `from` at half-pixel midpoints, finds the nearest segment in `to` for
// each sample, and accumulates matched length (and azimuth error if asked).
struct SweepResult {
    double total = 0.0;
    double matched = 0.0;
    double az_err_weighted = 0.0;
};

SweepResult sweep(const std::vector<Seg>& from, const std::vector<Seg>& to, double tol) {
    SweepResult r;
    for (const auto& f : from) {
        const double len = norm(f.b - f.a);
        const int n = std::max(1, static_cast<int>(std::ceil(len / 0.5)));
        const double step = len / n;
        for (int i = 0; i < n; ++i) {
            const double t = (i + 0.5) / n;
            const Vec2 p = f.a + t * (f.b - f.a);
            double best = std::numeric_limits<double>::infinity();
            double best_az = 0.0;
            for (const auto& g : to) {
                const double d = point_seg_dist(p, g);
                if (d < best) {
                    best = d;
                    best_az = g.az;
                }
            }
            r.total += step;
            if (best <= tol + 1e-9) {
                r.matched += step;
                r.az_err_weighted += step * azimuth_diff(f.az, best_az);
            }
        }
    }
    return r;
}

}  // namespace

MatchScore score_against_truth(const LineamentSet& found, const LineamentSet& truth,
                               double tol_px) {
    const auto fs = segments_of(found);
    const auto ts = segments_of(truth);

    MatchScore m;
    const SweepResult rec = sweep(ts, fs, tol_px);
    const SweepResult pre = sweep(fs, ts, tol_px);
    m.total_truth_len = rec.total;
    m.total_found_len = pre.total;
    if (rec.total > 0.0) m.recall_len = rec.matched / rec.total;
    if (pre.total > 0.0) m.precision_len = pre.matched / pre.total;
    if (rec.matched > 0.0) m.azimuth_err_deg = rec.az_err_weighted / rec.matched;
    return m;
}

}  // namespace linex::score
