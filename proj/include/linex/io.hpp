#pragma once

#include <string>

#include "linex/lineament.hpp"
#include "linex/raster.hpp"

namespace linex::io {

// Shortest exact decimal form of a double (std::to_chars), used everywhere a
// number goes into a text output so round-trips are bit-exact.
std::string format_double(double v);

// ESRI ASCII grid. Header keys are case-insensitive; ncols, nrows, xllcorner,
// yllcorner and cellsize are required, nodata_value optional. Values are
// written with enough digits to round-trip doubles exactly.
GrayImage read_ascii_grid(const std::string& path);
void write_ascii_grid(const GrayImage& img, const std::string& path);

// Band-sequential little-endian float32 payload `x.bsq` with a JSON sidecar
// `x.hdr.json` carrying {width, height, bands, origin_x, origin_y, pixel_size,
// nodata?, epsg_hint?}. Cells equal to nodata (or non-finite) load masked.
MultibandRaster read_multiband(const std::string& bsq_path);
void write_multiband(const MultibandRaster& r, const std::string& bsq_path);

enum class VectorFormat { geojson, csv };

// GeoJSON FeatureCollection of LineStrings in world coordinates with
// properties {id, length_m, mean_azimuth_deg}, or CSV rows {id, seq, x, y}.
// The GeoJSON additionally carries the grid georeferencing as foreign members
// so a later read can map back to pixels.
void write_lineaments(const LineamentSet& set, const std::string& path, VectorFormat fmt);
LineamentSet read_lineaments_geojson(const std::string& path);

// CSV with header x,y,label (label optional per row).
PointSet read_occurrences(const std::string& path);
void write_occurrences(const PointSet& pts, const std::string& path);

}  // namespace linex::io
