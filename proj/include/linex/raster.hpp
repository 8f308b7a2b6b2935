#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linex/geo.hpp"

namespace linex {

/// Single-band raster of doubles with a per-pixel validity mask.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> values;       // row-major
    std::vector<std::uint8_t> valid;  // 1 = usable sample
    GeoRef georef;
    std::optional<double> nodata;     // carried for round-trip I/O

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0, GeoRef g = {});

    std::size_t idx(int row, int col) const {
        return static_cast<std::size_t>(row) * width + col;
    }
    double at(int row, int col) const { return values[idx(row, col)]; }
    double& at(int row, int col) { return values[idx(row, col)]; }
    bool is_valid(int row, int col) const { return valid[idx(row, col)] != 0; }
    void set_valid(int row, int col, bool v) { valid[idx(row, col)] = v ? 1 : 0; }
    bool in_bounds(int row, int col) const {
        return row >= 0 && row < height && col >= 0 && col < width;
    }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }
    std::size_t valid_count() const;
};

/// B >= 1 co-registered band planes, band-sequential storage, one shared
/// validity mask.
struct MultibandRaster {
    int width = 0;
    int height = 0;
    int bands = 0;
    std::vector<double> samples;      // band-sequential, row-major within band
    std::vector<std::uint8_t> valid;  // per pixel
    GeoRef georef;
    std::optional<double> nodata;

    MultibandRaster() = default;
    MultibandRaster(int w, int h, int b, double fill = 0.0, GeoRef g = {});

    std::size_t plane() const {
        return static_cast<std::size_t>(width) * height;
    }
    std::size_t idx(int band, int row, int col) const {
        return band * plane() + static_cast<std::size_t>(row) * width + col;
    }
    double at(int band, int row, int col) const { return samples[idx(band, row, col)]; }
    double& at(int band, int row, int col) { return samples[idx(band, row, col)]; }
    bool is_valid(int row, int col) const {
        return valid[static_cast<std::size_t>(row) * width + col] != 0;
    }
    void set_valid(int row, int col, bool v) {
        valid[static_cast<std::size_t>(row) * width + col] = v ? 1 : 0;
    }
    bool in_bounds(int row, int col) const {
        return row >= 0 && row < height && col >= 0 && col < width;
    }
    std::size_t valid_count() const;

    GrayImage band(int b) const;
    static MultibandRaster from_gray(const GrayImage& g);
    static MultibandRaster from_bands(const std::vector<GrayImage>& planes);
};

struct LabeledPoint {
    double x = 0.0;
    double y = 0.0;
    std::string label;
};

/// World-coordinate point layer (e.g. known mineral occurrences).
struct PointSet {
    std::vector<LabeledPoint> points;
};

/// Linear rescale of valid samples to [0, 255]. A constant (or empty) valid
/// range maps to all zeros.
GrayImage rescale_to_255(const GrayImage& img);

}  // namespace linex
