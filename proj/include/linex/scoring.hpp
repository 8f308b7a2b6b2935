#pragma once

#include "linex/lineament.hpp"

namespace linex::score {

// Length-based agreement between an extracted line set and ground truth,
// both in pixel coordinates on the same grid.
struct MatchScore {
    double recall_len = 0.0;      // fraction of truth length within tol of found
    double precision_len = 0.0;   // fraction of found length within tol of truth
    double azimuth_err_deg = 0.0; // length-weighted over matched truth samples
    double total_truth_len = 0.0;   // pixel units
    double total_found_len = 0.0;
};

// Densely samples both sets at half-pixel steps and measures the nearest
// opposing segment for each sample.
MatchScore score_against_truth(const LineamentSet& found, const LineamentSet& truth,
                               double tol_px);

}  // namespace linex::score
