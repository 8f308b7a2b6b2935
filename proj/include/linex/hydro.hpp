#pragma once

#include <cstdint>
#include <vector>

#include "linex/lineament.hpp"
#include "linex/raster.hpp"

namespace linex::hydro {

// ESRI D8 direction codes, clockwise from east: E=1, SE=2, S=4, SW=8, W=16,
// NW=32, N=64, NE=128; 0 marks an outlet (or masked cell).
struct FlowGrid {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> direction;
    std::vector<std::int64_t> accumulation;  // upslope cells, self included
    std::vector<std::uint8_t> valid;
    GeoRef georef;

    std::size_t idx(int r, int c) const {
        return static_cast<std::size_t>(r) * width + c;
    }
};

struct StreamMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;
    int buffer_radius_px = 0;
    GeoRef georef;

    bool at(int r, int c) const {
        return mask[static_cast<std::size_t>(r) * width + c] != 0;
    }
    std::size_t cell_count() const;
    GrayImage to_gray() const;
};

// Priority-flood depression filling: water rises from the border (and from
// cells next to masked holes) so every cell gains a non-ascending path out.
// Output >= input everywhere, border cells untouched.
GrayImage fill_sinks(const GrayImage& dem);

// Steepest-descent D8 on a filled DEM: drop weighted by distance (diagonals
// / sqrt(2)), ties to the first of E,SE,S,SW,W,NW,N,NE. Cells with no
// downhill neighbor on the border (or beside masked cells) become outlets;
// interior flats drain by breadth-first adoption of a resolved equal-height
// neighbor. Accumulation by topological order.
FlowGrid d8_flow(const GrayImage& dem_filled);

// Threshold the accumulation: stream iff accumulation >= min_cells.
StreamMask streams(const FlowGrid& f, std::int64_t min_cells);

// Euclidean dilation of the stream mask by radius_px.
StreamMask buffer(const StreamMask& m, int radius_px);

// Drops every lineament with strictly more than half its length inside the
// buffer; length fractions come from sampling segment midpoints at 0.5 px
// steps and rounding to the containing cell.
LineamentSet remove_stream_lineaments(const LineamentSet& set, const StreamMask& buf);

}  // namespace linex::hydro
