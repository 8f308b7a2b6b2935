#pragma once

#include <string>

#include "linex/common.hpp"

namespace linex {

/// Axis-aligned, square-pixel georeferencing. (origin_x, origin_y) is the world
/// position of the outer (top-left) corner of pixel (0,0); rows grow southward.
/// Integer pixel coordinates refer to pixel centers.
struct GeoRef {
    double origin_x = 0.0;
    double origin_y = 0.0;
    double pixel_size = 1.0;
    std::string epsg_hint;  // opaque CRS label, never interpreted

    Vec2 pixel_to_world(double col, double row) const {
        return {origin_x + (col + 0.5) * pixel_size,
                origin_y - (row + 0.5) * pixel_size};
    }

    Vec2 world_to_pixel(double x, double y) const {
        return {(x - origin_x) / pixel_size - 0.5,
                (origin_y - y) / pixel_size - 0.5};
    }

    bool same_grid(const GeoRef& o) const {
        return origin_x == o.origin_x && origin_y == o.origin_y &&
               pixel_size == o.pixel_size;
    }

    void validate() const {
        if (!(pixel_size > 0.0))
            throw ValidationError("GeoRef: pixel_size must be > 0");
    }
};

}  // namespace linex
