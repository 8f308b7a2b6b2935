#pragma once

#include <array>
#include <optional>
#include <string>

#include "linex/raster.hpp"

namespace linex::enhance {

struct Kernel3x3 {
    std::array<double, 9> k{};  // row-major
    std::string name;
};

// Adaptive additive-noise smoother: out = m + k (center - m) with
// k = v / (v + sigma_noise^2) from the window mean m and population variance
// v over valid in-window pixels. sigma_noise 0 is the identity. When
// sigma_noise is not supplied it comes from estimate_lee_sigma.
GrayImage lee_filter(const GrayImage& img, int window = 3,
                     std::optional<double> sigma_noise = {});

// Noise stddev guess: mean 3x3-window stddev over the flattest decile of
// windows (the windows least contaminated by real structure).
double estimate_lee_sigma(const GrayImage& img);

GrayImage median_filter(const GrayImage& img, int window = 3);

// Prewitt compass kernel for one of the four strike azimuths {0, 45, 90, 135}.
// Coefficients sum to zero, so flat areas respond 0.
Kernel3x3 directional_kernel(int azimuth_deg);

// The fixed stencil [0 -1 0; -1 4 -1; 0 -1 0].
Kernel3x3 laplacian_kernel();

// 3x3 correlation with replicate-edge padding; see kernels.hpp for the mask
// conventions.
GrayImage convolve(const GrayImage& img, const Kernel3x3& k);

}  // namespace linex::enhance
