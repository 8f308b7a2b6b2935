#include "linex/hydro.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

#include "linex/kernels.hpp"

namespace linex::hydro {

namespace {

// neighbor order E, SE, S, SW, W, NW, N, NE with matching direction codes
constexpr int kDr[8] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kDc[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr std::uint8_t kCode[8] = {1, 2, 4, 8, 16, 32, 64, 128};
const double kDist[8] = {1, std::sqrt(2.0), 1, std::sqrt(2.0),
                         1, std::sqrt(2.0), 1, std::sqrt(2.0)};

}  // namespace

std::size_t StreamMask::cell_count() const {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

GrayImage StreamMask::to_gray() const {
    GrayImage g(width, height, 0.0, georef);
    for (std::size_t i = 0; i < mask.size(); ++i) g.values[i] = mask[i] ? 1.0 : 0.0;
    return g;
}

GrayImage fill_sinks(const GrayImage& dem) {
    if (dem.valid_count() == 0) throw ValidationError("fill_sinks: no valid cells");
    const int w = dem.width, h = dem.height;
    GrayImage out = dem;

    struct Node {
        double elev;
        std::uint64_t serial;
        int r, c;
        bool operator>(const Node& o) const {
            return elev != o.elev ? elev > o.elev : serial > o.serial;
        }
    };
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> heap;
    std::vector<std::uint8_t> seen(dem.pixel_count(), 0);
    std::uint64_t serial = 0;

    const auto is_open_edge = [&](int r, int c) {
        if (r == 0 || r == h - 1 || c == 0 || c == w - 1) return true;
        for (int k = 0; k < 8; ++k)
            if (!dem.is_valid(r + kDr[k], c + kDc[k])) return true;
        return false;
    };
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (dem.is_valid(r, c) && is_open_edge(r, c)) {
                seen[dem.idx(r, c)] = 1;
                heap.push({dem.at(r, c), serial++, r, c});
            }
    while (!heap.empty()) {
        const Node n = heap.top();
        heap.pop();
        for (int k = 0; k < 8; ++k) {
            const int rr = n.r + kDr[k], cc = n.c + kDc[k];
            if (!dem.in_bounds(rr, cc) || !dem.is_valid(rr, cc)) continue;
            if (seen[dem.idx(rr, cc)]) continue;
            seen[dem.idx(rr, cc)] = 1;
            out.at(rr, cc) = std::max(dem.at(rr, cc), n.elev);
            heap.push({out.at(rr, cc), serial++, rr, cc});
        }
    }
    return out;
}

FlowGrid d8_flow(const GrayImage& dem) {
    const int w = dem.width, h = dem.height;
    FlowGrid f;
    f.width = w;
    f.height = h;
    f.georef = dem.georef;
    f.valid = dem.valid;
    f.direction.assign(dem.pixel_count(), 0);
    f.accumulation.assign(dem.pixel_count(), 0);

    const auto grid_edge = [&](int r, int c) {
        if (r == 0 || r == h - 1 || c == 0 || c == w - 1) return true;
        for (int k = 0; k < 8; ++k)
            if (!dem.is_valid(r + kDr[k], c + kDc[k])) return true;
        return false;
    };

    std::vector<std::uint8_t> outlet(dem.pixel_count(), 0);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            if (!dem.is_valid(r, c)) continue;
            double best_drop = 0.0;
            int best_k = -1;
            for (int k = 0; k < 8; ++k) {
                const int rr = r + kDr[k], cc = c + kDc[k];
                if (!dem.in_bounds(rr, cc) || !dem.is_valid(rr, cc)) continue;
                const double drop = (dem.at(r, c) - dem.at(rr, cc)) / kDist[k];
                if (drop > best_drop) {
                    best_drop = drop;
                    best_k = k;
                }
            }
            if (best_k >= 0)
                f.direction[f.idx(r, c)] = kCode[best_k];
            else if (grid_edge(r, c))
                outlet[f.idx(r, c)] = 1;
        }

    // Flats: adopt a direction toward any already-resolved neighbor of the
    // same (filled) height, spreading breadth-first from resolved cells and
    // outlets so flow always exits the flat.
    std::deque<std::pair<int, int>> queue;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (dem.is_valid(r, c) &&
                (f.direction[f.idx(r, c)] != 0 || outlet[f.idx(r, c)]))
                queue.emplace_back(r, c);
    while (!queue.empty()) {
        const auto [r, c] = queue.front();
        queue.pop_front();
        for (int k = 0; k < 8; ++k) {
            const int rr = r + kDr[k], cc = c + kDc[k];
            if (!dem.in_bounds(rr, cc) || !dem.is_valid(rr, cc)) continue;
            const std::size_t ni = f.idx(rr, cc);
            if (f.direction[ni] != 0 || outlet[ni]) continue;
            if (dem.at(rr, cc) != dem.at(r, c)) continue;
            f.direction[ni] = kCode[(k + 4) % 8];  // point back at (r, c)
            queue.emplace_back(rr, cc);
        }
    }

    // Kahn order over the flow forest.
    std::vector<std::int32_t> indeg(dem.pixel_count(), 0);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const std::uint8_t d = f.direction[f.idx(r, c)];
            if (!d) continue;
            for (int k = 0; k < 8; ++k)
                if (kCode[k] == d) {
                    ++indeg[f.idx(r + kDr[k], c + kDc[k])];
                    break;
                }
        }
    std::deque<std::pair<int, int>> topo;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            if (dem.is_valid(r, c)) f.accumulation[f.idx(r, c)] = 1;
            if (dem.is_valid(r, c) && indeg[f.idx(r, c)] == 0) topo.emplace_back(r, c);
        }
    while (!topo.empty()) {
        const auto [r, c] = topo.front();
        topo.pop_front();
        const std::uint8_t d = f.direction[f.idx(r, c)];
        if (!d) continue;
        for (int k = 0; k < 8; ++k)
            if (kCode[k] == d) {
                const int rr = r + kDr[k], cc = c + kDc[k];
                f.accumulation[f.idx(rr, cc)] += f.accumulation[f.idx(r, c)];
                if (--indeg[f.idx(rr, cc)] == 0) topo.emplace_back(rr, cc);
                break;
            }
    }
    return f;
}

StreamMask streams(const FlowGrid& f, std::int64_t min_cells) {
    if (min_cells < 1) throw ValidationError("streams: min_cells must be >= 1");
    StreamMask m;
    m.width = f.width;
    m.height = f.height;
    m.georef = f.georef;
    m.buffer_radius_px = 0;
    m.mask.assign(f.accumulation.size(), 0);
    for (std::size_t i = 0; i < m.mask.size(); ++i)
        if (f.valid[i] && f.accumulation[i] >= min_cells) m.mask[i] = 1;
    return m;
}

StreamMask buffer(const StreamMask& m, int radius_px) {
    if (radius_px < 0) throw ValidationError("buffer: radius must be >= 0");
    StreamMask out = m;
    out.buffer_radius_px = radius_px;
    out.mask = kernels::dilate_disk(m.mask, m.width, m.height, radius_px);
    return out;
}

LineamentSet remove_stream_lineaments(const LineamentSet& set, const StreamMask& buf) {
    if (!set.georef.same_grid(buf.georef))
        throw ValidationError("remove_stream_lineaments: lineaments and mask are on different grids");
    LineamentSet out;
    out.georef = set.georef;
    out.provenance = set.provenance;
    for (const auto& l : set.lines) {
        double total = 0.0, inside = 0.0;
        for (std::size_t s = 1; s < l.vertices.size(); ++s) {
            const Vec2 a = l.vertices[s - 1], b = l.vertices[s];
            const double len = norm(b - a);
            if (len == 0.0) continue;
            const int steps = std::max(1, static_cast<int>(std::ceil(len / 0.5)));
            const double piece = len / steps;
            for (int k = 0; k < steps; ++k) {
                const double t = (k + 0.5) / steps;
                const Vec2 p = a + t * (b - a);
                const int col = static_cast<int>(std::lround(p.x));
                const int row = static_cast<int>(std::lround(p.y));
                total += piece;
                if (row >= 0 && row < buf.height && col >= 0 && col < buf.width &&
                    buf.at(row, col))
                    inside += piece;
            }
        }
        if (total == 0.0 || inside <= 0.5 * total) out.lines.push_back(l);
    }
    return out;
}

}  // namespace linex::hydro
