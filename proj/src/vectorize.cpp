#include "linex/vectorize.hpp"

#include <algorithm>
#include <cmath>

namespace linex::vectorize {

using detect::EdgeMap;

void ExtractionParams::validate(bool force) const {
    canny().validate(force);
    if (force) return;
    if (curve_length < 10 || curve_length > 50)
        throw ValidationError("curve_length " + std::to_string(curve_length) +
                              " outside [10, 50] (pass force to override)");
    if (line_fitting_error < 2.0 || line_fitting_error > 5.0)
        throw ValidationError("line_fitting_error " + std::to_string(line_fitting_error) +
                              " outside [2, 5] (pass force to override)");
    if (angular_difference < 3.0 || angular_difference > 20.0)
        throw ValidationError("angular_difference " + std::to_string(angular_difference) +
                              " outside [3, 20] (pass force to override)");
    if (linking_distance < 10.0 || linking_distance > 50.0)
        throw ValidationError("linking_distance " + std::to_string(linking_distance) +
                              " outside [10, 50] (pass force to override)");
}

namespace {

// Fixed neighbor scan order: N, NE, E, SE, S, SW, W, NW.
constexpr int kDr[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
constexpr int kDc[8] = {0, 1, 1, 1, 0, -1, -1, -1};

struct Tracer {
    const EdgeMap& e;
    std::vector<std::uint8_t> junction;
    std::vector<std::uint8_t> claimed;

    explicit Tracer(const EdgeMap& em)
        : e(em),
          junction(static_cast<std::size_t>(em.width) * em.height, 0),
          claimed(static_cast<std::size_t>(em.width) * em.height, 0) {
        for (int r = 0; r < e.height; ++r)
            for (int c = 0; c < e.width; ++c) {
                if (!e.at(r, c)) continue;
                int deg = 0;
                for (int k = 0; k < 8; ++k)
                    if (is_edge(r + kDr[k], c + kDc[k])) ++deg;
                if (deg > 2) junction[idx(r, c)] = 1;
            }
    }

    std::size_t idx(int r, int c) const {
        return static_cast<std::size_t>(r) * e.width + c;
    }
    bool is_edge(int r, int c) const {
        return r >= 0 && r < e.height && c >= 0 && c < e.width && e.at(r, c);
    }
    bool open(int r, int c) const { return is_edge(r, c) && !claimed[idx(r, c)]; }

    // Extends from `from` claiming pixels until a junction is taken or no
    // unclaimed neighbor remains.
    void walk(PixelRC from, PixelChain& out) {
        PixelRC cur = from;
        while (true) {
            int found = -1;
            for (int k = 0; k < 8; ++k)
                if (open(cur.row + kDr[k], cur.col + kDc[k])) {
                    found = k;
                    break;
                }
            if (found < 0) return;
            cur = {cur.row + kDr[found], cur.col + kDc[found]};
            claimed[idx(cur.row, cur.col)] = 1;
            out.push_back(cur);
            if (junction[idx(cur.row, cur.col)]) return;
        }
    }

    PixelChain trace_from(PixelRC seed) {
        claimed[idx(seed.row, seed.col)] = 1;
        PixelChain forward{seed};
        if (!junction[idx(seed.row, seed.col)]) {
            walk(seed, forward);
            PixelChain backward;
            walk(seed, backward);
            if (!backward.empty()) {
                std::reverse(backward.begin(), backward.end());
                backward.insert(backward.end(), forward.begin(), forward.end());
                return backward;
            }
        }
        return forward;
    }
};

bool adjacent(PixelRC a, PixelRC b) {
    return a != b && std::abs(a.row - b.row) <= 1 && std::abs(a.col - b.col) <= 1;
}

double point_segment_dist(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return norm(p - a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

Vec2 endpoint(const Lineament& l, int which) {
    return which == 0 ? l.vertices.front() : l.vertices.back();
}

double terminal_azimuth(const Lineament& l, int which) {
    if (which == 0) return pixel_azimuth(l.vertices[0], l.vertices[1]);
    const std::size_t n = l.vertices.size();
    return pixel_azimuth(l.vertices[n - 2], l.vertices[n - 1]);
}

}  // namespace

std::vector<PixelChain> trace_curves(const EdgeMap& e) {
    Tracer t(e);
    std::vector<PixelChain> chains;

    // endpoints and isolated pixels first
    for (int r = 0; r < e.height; ++r)
        for (int c = 0; c < e.width; ++c) {
            if (!e.at(r, c) || t.claimed[t.idx(r, c)]) continue;
            int deg = 0;
            for (int k = 0; k < 8; ++k)
                if (t.is_edge(r + kDr[k], c + kDc[k])) ++deg;
            if (deg <= 1) chains.push_back(t.trace_from({r, c}));
        }
    // remaining non-junction pixels (closed loops, runs between junctions)
    for (int r = 0; r < e.height; ++r)
        for (int c = 0; c < e.width; ++c)
            if (e.at(r, c) && !t.claimed[t.idx(r, c)] && !t.junction[t.idx(r, c)])
                chains.push_back(t.trace_from({r, c}));
    // orphan junction pixels attach to the first chain with an adjacent
    // terminal, else start their own chain
    for (int r = 0; r < e.height; ++r)
        for (int c = 0; c < e.width; ++c) {
            if (!e.at(r, c) || t.claimed[t.idx(r, c)]) continue;
            const PixelRC p{r, c};
            t.claimed[t.idx(r, c)] = 1;
            bool attached = false;
            for (auto& chain : chains) {
                if (adjacent(chain.back(), p)) {
                    chain.push_back(p);
                    attached = true;
                    break;
                }
                if (adjacent(chain.front(), p)) {
                    chain.insert(chain.begin(), p);
                    attached = true;
                    break;
                }
            }
            if (!attached) chains.push_back({p});
        }
    return chains;
}

std::vector<PixelChain> drop_short(std::vector<PixelChain> chains, int curve_length) {
    chains.erase(std::remove_if(chains.begin(), chains.end(),
                                [&](const PixelChain& c) {
                                    return static_cast<int>(c.size()) < curve_length;
                                }),
                 chains.end());
    return chains;
}

Lineament fit_polyline(const PixelChain& chain, double line_fitting_error) {
    if (chain.size() < 2) throw ValidationError("fit_polyline: chain needs >= 2 pixels");
    const std::size_t n = chain.size();
    std::vector<Vec2> pts(n);
    for (std::size_t i = 0; i < n; ++i)
        pts[i] = {static_cast<double>(chain[i].col), static_cast<double>(chain[i].row)};

    std::vector<std::uint8_t> keepv(n, 0);
    keepv[0] = keepv[n - 1] = 1;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, n - 1}};
    while (!stack.empty()) {
        const auto [i0, i1] = stack.back();
        stack.pop_back();
        if (i1 <= i0 + 1) continue;
        double worst = 0.0;
        std::size_t split = 0;
        for (std::size_t i = i0 + 1; i < i1; ++i) {
            const double d = point_segment_dist(pts[i], pts[i0], pts[i1]);
            if (d > worst) {
                worst = d;
                split = i;
            }
        }
        if (worst > line_fitting_error) {
            keepv[split] = 1;
            stack.push_back({i0, split});
            stack.push_back({split, i1});
        }
    }
    Lineament l;
    for (std::size_t i = 0; i < n; ++i)
        if (keepv[i]) l.vertices.push_back(pts[i]);
    return l;
}

LineamentSet link_polylines(LineamentSet set, double angular_difference,
                            double linking_distance) {
    while (set.lines.size() >= 2) {
        struct Cand {
            double gap;
            int id_lo, id_hi;
            std::size_t i, j;
            int ei, ej;
        };
        bool have = false;
        Cand best{};
        for (std::size_t i = 0; i < set.lines.size(); ++i)
            for (std::size_t j = i + 1; j < set.lines.size(); ++j)
                for (int ei = 0; ei < 2; ++ei)
                    for (int ej = 0; ej < 2; ++ej) {
                        const double gap =
                            norm(endpoint(set.lines[i], ei) - endpoint(set.lines[j], ej));
                        if (gap > linking_distance) continue;
                        const double da = azimuth_diff(terminal_azimuth(set.lines[i], ei),
                                                       terminal_azimuth(set.lines[j], ej));
                        if (da > angular_difference) continue;
                        Cand c{gap, std::min(set.lines[i].id, set.lines[j].id),
                               std::max(set.lines[i].id, set.lines[j].id), i, j, ei, ej};
                        const auto key = [](const Cand& x) {
                            return std::make_tuple(x.gap, x.id_lo, x.id_hi, x.ei, x.ej);
                        };
                        if (!have || key(c) < key(best)) {
                            best = c;
                            have = true;
                        }
                    }
        if (!have) break;

        Lineament a = std::move(set.lines[best.i]);
        Lineament b = std::move(set.lines[best.j]);
        if (best.ei == 0) std::reverse(a.vertices.begin(), a.vertices.end());
        if (best.ej == 1) std::reverse(b.vertices.begin(), b.vertices.end());
        std::size_t start = 0;
        const Vec2 tail = a.vertices.back();
        if (b.vertices.front().x == tail.x && b.vertices.front().y == tail.y) start = 1;
        a.vertices.insert(a.vertices.end(), b.vertices.begin() + static_cast<std::ptrdiff_t>(start),
                          b.vertices.end());
        a.id = std::min(a.id, b.id);
        set.lines.erase(set.lines.begin() + static_cast<std::ptrdiff_t>(best.j));
        set.lines[best.i] = std::move(a);
    }
    return set;
}

LineamentSet extract(const GrayImage& img, const ExtractionParams& p, bool force) {
    p.validate(force);
    const EdgeMap e = detect::canny(img, p.canny(), force);
    const auto chains = drop_short(trace_curves(e), p.curve_length);
    LineamentSet set;
    set.georef = img.georef;
    int id = 0;
    for (const auto& chain : chains) {
        Lineament l = fit_polyline(chain, p.line_fitting_error);
        l.id = id++;
        set.lines.push_back(std::move(l));
    }
    return link_polylines(std::move(set), p.angular_difference, p.linking_distance);
}

LineamentSet extract_directional(const std::vector<GrayImage>& azimuth_images,
                                 const ExtractionParams& p, bool force) {
    LineamentSet all;
    all.provenance = "directional";
    bool first = true;
    for (const auto& img : azimuth_images) {
        if (first) {
            all.georef = img.georef;
            first = false;
        }
        LineamentSet part = extract(img, p, force);
        for (auto& l : part.lines) {
            const bool dup = std::any_of(all.lines.begin(), all.lines.end(),
                                         [&](const Lineament& o) {
                                             if (o.vertices.size() != l.vertices.size())
                                                 return false;
                                             for (std::size_t i = 0; i < o.vertices.size(); ++i)
                                                 if (o.vertices[i].x != l.vertices[i].x ||
                                                     o.vertices[i].y != l.vertices[i].y)
                                                     return false;
                                             return true;
                                         });
            if (dup) continue;
            l.id = static_cast<int>(all.lines.size());
            all.lines.push_back(std::move(l));
        }
    }
    return all;
}

}  // namespace linex::vectorize
