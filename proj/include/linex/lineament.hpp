#pragma once

#include <string>
#include <vector>

#include "linex/geo.hpp"

namespace linex {

/// Polyline in pixel coordinates (integer coordinates are pixel centers).
struct Lineament {
    int id = 0;
    std::vector<Vec2> vertices;

    double pixel_length() const;
    double world_length(const GeoRef& g) const {
        return pixel_length() * g.pixel_size;
    }
    /// Length-weighted circular mean of segment azimuths (doubled-angle mean),
    /// degrees in [0, 180).
    double mean_azimuth_deg() const;
};

struct LineamentSet {
    std::vector<Lineament> lines;
    GeoRef georef;
    std::string provenance;  // which filter/azimuth pass produced it

    std::size_t size() const { return lines.size(); }
    double total_pixel_length() const;
};

}  // namespace linex
