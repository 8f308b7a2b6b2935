#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "linex/raster.hpp"
#include "linex/smallmat.hpp"

namespace linex::dimred {

// Valid pixels flattened to rows, one column per band, columns centered.
struct DataMatrix {
    std::size_t n_samples = 0;
    int n_vars = 0;
    std::vector<double> values;  // row-major, n_samples x n_vars
    std::vector<double> mean;    // per-band mean removed during centering

    double at(std::size_t row, int col) const { return values[row * n_vars + col]; }
    double& at(std::size_t row, int col) { return values[row * n_vars + col]; }
};

enum class ProjectionKind { pca, ica_unmixing, mnf };

struct ProjectionMatrix {
    SmallMat m;  // n_vars x n_vars, rows are components
    ProjectionKind kind = ProjectionKind::pca;
};

enum class ScoreKind { eigenvalue_variance, snr_eigenvalue, abs_kurtosis };

// Component planes ordered by descending score, carrying the source mask.
struct ComponentStack {
    MultibandRaster components;
    std::vector<double> scores;
    ScoreKind score_kind = ScoreKind::eigenvalue_variance;
};

struct PcaResult {
    ProjectionMatrix projection;
    std::vector<double> eigenvalues;  // descending
    int jacobi_rotations = 0;
};

struct IcaOptions {
    int max_iter = 200;
    double tol = 1e-4;
    std::uint64_t seed = 42;
};

struct IcaResult {
    ProjectionMatrix unmixing;  // applies to centered band vectors
    bool converged = false;
    int iterations = 0;
};

struct MnfResult {
    ProjectionMatrix projection;
    std::vector<double> snr;  // descending eigenvalues of the noise-whitened covariance
    double noise_condition = 0.0;
    double ridge = 0.0;
};

DataMatrix to_data_matrix(const MultibandRaster& r);

// Sample covariance (1/(n-1)) with a fixed chunked summation order, so the
// result is independent of the thread count.
SmallMat covariance(const DataMatrix& d);

PcaResult pca(const DataMatrix& d);

// Symmetric fixed-point FastICA with tanh contrast on internally whitened
// data. Returns the unmixing matrix for centered inputs; non-convergence
// after max_iter returns the best iterate with converged = false.
IcaResult fast_ica(const DataMatrix& d, const IcaOptions& opt = {});

// Horizontal shift-difference noise estimate: covariance of
// x(i,j) - x(i,j+1) over valid pairs, halved. Uncentered, so a linear ramp
// comes out as exactly step^2/2.
SmallMat estimate_noise_covariance(const MultibandRaster& r);

ComponentStack mnf(const MultibandRaster& r, MnfResult* detail = nullptr);

// Applies P to centered band vectors per pixel and reshapes to planes.
// PCA/MNF callers pass their eigenvalues as scores; for an ICA unmixing the
// scores are each component's absolute excess kurtosis and the planes are
// reordered by descending score.
ComponentStack transform(const MultibandRaster& r, const ProjectionMatrix& p,
                         const std::vector<double>& scores = {});

// Component plane (default: highest score) rescaled to [0, 255].
GrayImage select_component(const ComponentStack& cs, std::optional<int> index = {});

}  // namespace linex::dimred
