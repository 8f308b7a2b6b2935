#include "linex/detect.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "linex/kernels.hpp"
#include "linex/parallel.hpp"

namespace linex::detect {

void CannyParams::validate(bool force) const {
    if (force) return;
    if (filter_radius < 3 || filter_radius > 8)
        throw ValidationError("canny: filter_radius " + std::to_string(filter_radius) +
                              " outside [3, 8] (pass force to override)");
    if (edge_gradient < 10.0 || edge_gradient > 70.0)
        throw ValidationError("canny: edge_gradient " + std::to_string(edge_gradient) +
                              " outside [10, 70] (pass force to override)");
}

std::size_t EdgeMap::edge_count() const {
    return static_cast<std::size_t>(std::count(edge.begin(), edge.end(), std::uint8_t{1}));
}

GrayImage EdgeMap::to_gray() const {
    GrayImage g(width, height, 0.0, georef);
    for (std::size_t i = 0; i < edge.size(); ++i) g.values[i] = edge[i] ? 1.0 : 0.0;
    return g;
}

EdgeMap canny(const GrayImage& img, const CannyParams& p, bool force) {
    p.validate(force);
    const int w = img.width, h = img.height;
    EdgeMap out;
    out.width = w;
    out.height = h;
    out.georef = img.georef;
    out.edge.assign(img.pixel_count(), 0);
    if (w < 2 || h < 2) return out;

    const GrayImage smooth = kernels::gaussian_blur(img, p.filter_radius, p.filter_radius / 2.0);
    GrayImage gx, gy;
    kernels::sobel(smooth, gx, gy);

    std::vector<double> mag(img.pixel_count(), 0.0);
    par::for_rows(h, [&](int r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t i = img.idx(r, c);
            if (!img.valid[i]) continue;
            mag[i] = std::hypot(gx.values[i], gy.values[i]);
        }
    });
    double mmax = 0.0;
    for (double v : mag) mmax = std::max(mmax, v);
    if (mmax > 0.0) {
        const double scale = 255.0 / mmax;
        par::for_rows(h, [&](int r) {
            for (int c = 0; c < w; ++c) mag[img.idx(r, c)] *= scale;
        });
    }

    // Non-maxima suppression. The gradient is quantized to one of four axes;
    // "ahead" is the neighbor on the side the gradient points to. Keeping a
    // pixel only when it strictly beats the ahead neighbor (ties allowed
    // behind) leaves exactly one survivor across a symmetric two-pixel peak,
    // and choosing sides by gradient sign keeps the rule rotation-consistent.
    std::vector<std::uint8_t> keep(img.pixel_count(), 0);
    par::for_rows(h, [&](int r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t i = img.idx(r, c);
            const double m = mag[i];
            if (m <= 0.0) continue;
            const double vx = gx.values[i], vy = gy.values[i];
            double ang = std::fmod(std::atan2(vy, vx) * 180.0 / kPi + 360.0, 180.0);
            int ax, ay;
            if (ang < 22.5 || ang >= 157.5) {
                ax = 1; ay = 0;
            } else if (ang < 67.5) {
                ax = 1; ay = 1;
            } else if (ang < 112.5) {
                ax = 0; ay = 1;
            } else {
                ax = -1; ay = 1;
            }
            if (vx * ax + vy * ay < 0.0) {
                ax = -ax;
                ay = -ay;
            }
            const auto at_or_zero = [&](int rr, int cc) {
                return (rr < 0 || rr >= h || cc < 0 || cc >= w) ? 0.0 : mag[img.idx(rr, cc)];
            };
            const double ahead = at_or_zero(r + ay, c + ax);
            const double behind = at_or_zero(r - ay, c - ax);
            if (m > ahead && m >= behind) keep[i] = 1;
        }
    });

    // Hysteresis: seed at strong pixels in row-major order, grow through
    // 8-connected weak pixels. The resulting set does not depend on seed
    // order, only the traversal does.
    const double high = p.edge_gradient;
    const double low = p.edge_gradient / 2.0;
    std::deque<std::pair<int, int>> queue;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const std::size_t i = img.idx(r, c);
            if (keep[i] && mag[i] >= high && !out.edge[i]) {
                out.edge[i] = 1;
                queue.emplace_back(r, c);
                while (!queue.empty()) {
                    const auto [qr, qc] = queue.front();
                    queue.pop_front();
                    for (int dr = -1; dr <= 1; ++dr)
                        for (int dc = -1; dc <= 1; ++dc) {
                            if (dr == 0 && dc == 0) continue;
                            const int nr = qr + dr, nc = qc + dc;
                            if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
                            const std::size_t ni = img.idx(nr, nc);
                            if (out.edge[ni] || !keep[ni] || mag[ni] < low) continue;
                            out.edge[ni] = 1;
                            queue.emplace_back(nr, nc);
                        }
                }
            }
        }
    return out;
}

}  // namespace linex::detect
