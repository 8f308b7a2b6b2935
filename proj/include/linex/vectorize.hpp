#pragma once

#include <vector>

#include "linex/detect.hpp"
#include "linex/lineament.hpp"

namespace linex::vectorize {

struct PixelRC {
    int row = 0;
    int col = 0;
    bool operator==(const PixelRC&) const = default;
};
using PixelChain = std::vector<PixelRC>;

struct ExtractionParams {
    int filter_radius = 5;
    double edge_gradient = 50;
    int curve_length = 50;          // minimum chain pixel count
    double line_fitting_error = 5;  // Douglas-Peucker tolerance, pixels
    double angular_difference = 10; // max end-tangent azimuth gap, degrees
    double linking_distance = 50;   // max endpoint gap, pixels

    detect::CannyParams canny() const { return {filter_radius, edge_gradient}; }
    // Range rules: curve_length in [10,50], line_fitting_error in [2,5],
    // angular_difference in [3,20], linking_distance in [10,50], plus the
    // canny ranges. force skips all of them.
    void validate(bool force = false) const;
};

// Walk the edge map into 8-connected chains. Pixels with more than two edge
// neighbors are junctions: a walk stops after stepping onto one, so the
// junction pixel belongs to whichever chain reaches it first. Seeds are taken
// in row-major order (endpoints first, then leftover loop pixels); junction
// pixels nothing walked into are appended to the first chain with an adjacent
// terminal. Every edge pixel lands in exactly one chain.
std::vector<PixelChain> trace_curves(const detect::EdgeMap& e);

// Drops chains with fewer pixels than curve_length.
std::vector<PixelChain> drop_short(std::vector<PixelChain> chains, int curve_length);

// Douglas-Peucker with tolerance = line_fitting_error; endpoints survive.
Lineament fit_polyline(const PixelChain& chain, double line_fitting_error);

// Greedy closest-gap-first endpoint linking. A candidate pair needs an
// endpoint gap <= linking_distance and terminal-segment azimuths within
// angular_difference (mod 180); ties break on (gap, lower id pair). Each merge
// joins two polylines with a connecting segment and keeps the lower id.
LineamentSet link_polylines(LineamentSet set, double angular_difference,
                            double linking_distance);

// canny -> trace -> drop_short -> fit -> link on a single enhanced image.
LineamentSet extract(const GrayImage& img, const ExtractionParams& p, bool force = false);

// Runs extract on each azimuth image and unions the results, dropping exact
// duplicate geometries and renumbering ids.
LineamentSet extract_directional(const std::vector<GrayImage>& azimuth_images,
                                 const ExtractionParams& p, bool force = false);

}  // namespace linex::vectorize
