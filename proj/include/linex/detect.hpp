#pragma once

#include <cstdint>
#include <vector>

#include "linex/raster.hpp"

namespace linex::detect {

struct CannyParams {
    int filter_radius = 5;       // Gaussian kernel radius; sigma = radius / 2
    double edge_gradient = 50;   // hysteresis high threshold, 0-255 gradient units

    // radius in [3,8], gradient in [10,70]; force skips the range check.
    void validate(bool force = false) const;
};

struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> edge;  // row-major, 1 = edge pixel
    GeoRef georef;

    bool at(int row, int col) const {
        return edge[static_cast<std::size_t>(row) * width + col] != 0;
    }
    std::size_t edge_count() const;
    GrayImage to_gray() const;  // {0,1} image for debug dumps
};

// Gaussian blur -> Sobel -> max-normalized magnitude -> 4-sector non-maxima
// suppression -> hysteresis at (edge_gradient, edge_gradient / 2) with
// 8-connected propagation. Input is expected on a [0,255]-ish scale; the
// magnitude normalization makes the thresholds contrast-relative.
EdgeMap canny(const GrayImage& img, const CannyParams& p, bool force = false);

}  // namespace linex::detect
