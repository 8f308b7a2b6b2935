#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "linex/lineament.hpp"
#include "linex/raster.hpp"

namespace linex::analyze {

// Coarse grid of summed lineament length (world units) clipped to a search
// disk around each cell center, plus its min-max fuzzy rescale.
struct DensityGrid {
    int cols = 0;
    int rows = 0;
    int cell_size_px = 10;
    int search_radius_px = 50;
    int src_width = 0;   // extent of the source raster, pixels
    int src_height = 0;
    std::vector<double> raw;
    std::vector<double> fuzzy;
    GeoRef georef;  // of the source raster; cells are cell_size_px blocks

    double fuzzy_at(int row, int col) const {
        return fuzzy[static_cast<std::size_t>(row) * cols + col];
    }
    GrayImage to_gray() const;  // fuzzy values on the coarse grid
};

struct RoseHistogram {
    std::array<double, 18> length_sum{};  // world units, bin k = [10k, 10k+10)
    std::array<std::int64_t, 18> count{};
    double total_length = 0.0;
    std::int64_t total_count = 0;

    bool empty() const { return total_count == 0; }
    int dominant_bin() const;  // by length; -1 when empty
    std::array<double, 18> length_pct() const;
    std::array<double, 18> count_pct() const;
};

// Share of occurrence points whose density cell reaches each fuzzy threshold
// t in {0, 0.05, ..., 1}. Points outside the raster extent count below every
// threshold and are tallied in n_outside.
struct CorrelationCurve {
    std::vector<double> thresholds;
    std::vector<double> pct_points;
    double auc = 0.0;  // trapezoid over t of the point fraction
    int n_outside = 0;
};

struct TripletScore {
    int b0 = 0, b1 = 0, b2 = 0;  // 0-based band indices
    double score = 0.0;          // sum of pairwise |Pearson r|, lower = better
};

struct FccRanking {
    std::vector<TripletScore> ranked;  // ascending score
    std::vector<double> band_stddev;
    std::vector<std::string> warnings;
};

DensityGrid density(const LineamentSet& set, int cell_size_px, int search_radius_px,
                    int src_width, int src_height);

RoseHistogram rose(const LineamentSet& set);

CorrelationCurve correlate_occurrences(const DensityGrid& d, const PointSet& pts);

FccRanking rank_fcc_triplets(const MultibandRaster& r);

void write_rose_csv(const RoseHistogram& h, const std::string& path);
void write_correlation_csv(const CorrelationCurve& c, const std::string& path);

}  // namespace linex::analyze
