#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "linex/raster.hpp"

// Low-level raster kernels. The functions in linex::kernels run their row
// loops through OpenMP; linex::kernels::serial holds plain-loop twins that the
// tests diff against and the benchmark races. Both variants share the same
// per-row worker, so any disagreement means a real data race.
//
// Shared conventions:
//   - replicate-edge padding for stencil reads
//   - a masked center pixel yields a masked output pixel (value 0)
//   - masked neighbors contribute 0 to convolutions, and are skipped entirely
//     by the rank/statistics filters

namespace linex::kernels {

// 3x3 correlation (no kernel flip), row-major coefficients.
GrayImage convolve3x3(const GrayImage& img, const std::array<double, 9>& k);

// Separable Gaussian, kernel cut at +-radius and the weights renormalized to
// sum 1.
GrayImage gaussian_blur(const GrayImage& img, int radius, double sigma);

// 3x3 Sobel pair; gy grows with the row index (downward).
void sobel(const GrayImage& img, GrayImage& gx, GrayImage& gy);

// Rank filter over the valid in-bounds window; an even count averages the two
// middle values.
GrayImage median(const GrayImage& img, int window);

// Per-pixel window mean and population variance over valid in-bounds pixels.
void window_stats(const GrayImage& img, int window, GrayImage& mean, GrayImage& var);

// Binary Euclidean dilation: out cell set iff some set cell lies within
// dx^2 + dy^2 <= radius^2.
std::vector<std::uint8_t> dilate_disk(const std::vector<std::uint8_t>& mask,
                                      int width, int height, int radius);

namespace serial {

GrayImage convolve3x3(const GrayImage& img, const std::array<double, 9>& k);
GrayImage gaussian_blur(const GrayImage& img, int radius, double sigma);
void sobel(const GrayImage& img, GrayImage& gx, GrayImage& gy);
GrayImage median(const GrayImage& img, int window);
void window_stats(const GrayImage& img, int window, GrayImage& mean, GrayImage& var);
std::vector<std::uint8_t> dilate_disk(const std::vector<std::uint8_t>& mask,
                                      int width, int height, int radius);

}  // namespace serial

}  // namespace linex::kernels
