#include "linex/raster.hpp"

#include <algorithm>
#include <limits>

#include "linex/lineament.hpp"

namespace linex {

GrayImage::GrayImage(int w, int h, double fill, GeoRef g)
    : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill),
      valid(static_cast<std::size_t>(w) * h, 1), georef(g) {}

std::size_t GrayImage::valid_count() const {
    return static_cast<std::size_t>(
        std::count(valid.begin(), valid.end(), std::uint8_t{1}));
}

MultibandRaster::MultibandRaster(int w, int h, int b, double fill, GeoRef g)
    : width(w), height(h), bands(b),
      samples(static_cast<std::size_t>(w) * h * b, fill),
      valid(static_cast<std::size_t>(w) * h, 1), georef(g) {}

std::size_t MultibandRaster::valid_count() const {
    return static_cast<std::size_t>(
        std::count(valid.begin(), valid.end(), std::uint8_t{1}));
}

GrayImage MultibandRaster::band(int b) const {
    GrayImage out(width, height, 0.0, georef);
    out.nodata = nodata;
    std::copy(samples.begin() + b * plane(),
              samples.begin() + (b + 1) * plane(), out.values.begin());
    out.valid = valid;
    return out;
}

MultibandRaster MultibandRaster::from_gray(const GrayImage& g) {
    MultibandRaster out(g.width, g.height, 1, 0.0, g.georef);
    out.samples = g.values;
    out.valid = g.valid;
    out.nodata = g.nodata;
    return out;
}

MultibandRaster MultibandRaster::from_bands(const std::vector<GrayImage>& planes) {
    if (planes.empty()) throw Error("from_bands: no bands given");
    const GrayImage& first = planes.front();
    MultibandRaster out(first.width, first.height,
                        static_cast<int>(planes.size()), 0.0, first.georef);
    out.nodata = first.nodata;
    for (int b = 0; b < out.bands; ++b) {
        const GrayImage& p = planes[b];
        if (p.width != first.width || p.height != first.height)
            throw Error("from_bands: band dimensions differ");
        std::copy(p.values.begin(), p.values.end(),
                  out.samples.begin() + b * out.plane());
        // a pixel is valid only where every band is valid
        for (std::size_t i = 0; i < out.valid.size(); ++i)
            if (!p.valid[i]) out.valid[i] = 0;
    }
    return out;
}

GrayImage rescale_to_255(const GrayImage& img) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < img.values.size(); ++i) {
        if (!img.valid[i]) continue;
        lo = std::min(lo, img.values[i]);
        hi = std::max(hi, img.values[i]);
    }
    GrayImage out = img;
    out.nodata.reset();
    if (!(hi > lo)) {  // constant or no valid pixels: degenerate range
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] = 0.0;
        return out;
    }
    const double scale = 255.0 / (hi - lo);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = img.valid[i] ? (img.values[i] - lo) * scale : 0.0;
    return out;
}

double Lineament::pixel_length() const {
    double len = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i)
        len += norm(vertices[i] - vertices[i - 1]);
    return len;
}

double Lineament::mean_azimuth_deg() const {
    double sx = 0.0, cx = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        const double len = norm(vertices[i] - vertices[i - 1]);
        if (len <= 0.0) continue;
        const double az2 = 2.0 * to_rad(pixel_azimuth(vertices[i - 1], vertices[i]));
        sx += len * std::sin(az2);
        cx += len * std::cos(az2);
    }
    if (sx == 0.0 && cx == 0.0) return 0.0;
    double a = 0.5 * to_deg(std::atan2(sx, cx));
    if (a < 0.0) a += 180.0;
    if (a >= 180.0) a -= 180.0;
    return a;
}

double LineamentSet::total_pixel_length() const {
    double len = 0.0;
    for (const auto& l : lines) len += l.pixel_length();
    return len;
}

}  // namespace linex
