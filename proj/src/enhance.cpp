#include "linex/enhance.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "linex/kernels.hpp"
#include "linex/parallel.hpp"

namespace linex::enhance {

GrayImage lee_filter(const GrayImage& img, int window, std::optional<double> sigma_noise) {
    if (window != 3 && window != 5 && window != 7)
        throw ValidationError("lee_filter: window must be 3, 5 or 7");
    const double sigma = sigma_noise ? *sigma_noise : estimate_lee_sigma(img);
    if (sigma < 0.0) throw ValidationError("lee_filter: sigma_noise must be >= 0");

    GrayImage mean, var;
    kernels::window_stats(img, window, mean, var);
    GrayImage out = img;
    const double s2 = sigma * sigma;
    par::for_rows(img.height, [&](int r) {
        for (int c = 0; c < img.width; ++c) {
            if (!img.is_valid(r, c)) continue;
            const double m = mean.at(r, c);
            const double v = var.at(r, c);
            const double k = s2 == 0.0 ? 1.0 : v / (v + s2);
            out.at(r, c) = m + k * (img.at(r, c) - m);
        }
    });
    return out;
}

double estimate_lee_sigma(const GrayImage& img) {
    GrayImage mean, var;
    kernels::window_stats(img, 3, mean, var);
    std::vector<double> stddevs;
    stddevs.reserve(img.pixel_count());
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
        if (img.valid[i]) stddevs.push_back(std::sqrt(var.values[i]));
    if (stddevs.empty()) return 0.0;
    std::sort(stddevs.begin(), stddevs.end());
    const std::size_t decile = std::max<std::size_t>(1, stddevs.size() / 10);
    double sum = 0.0;
    for (std::size_t i = 0; i < decile; ++i) sum += stddevs[i];
    return sum / static_cast<double>(decile);
}

GrayImage median_filter(const GrayImage& img, int window) {
    if (window != 3 && window != 5)
        throw ValidationError("median_filter: window must be 3 or 5");
    return kernels::median(img, window);
}

Kernel3x3 directional_kernel(int azimuth_deg) {
    switch (azimuth_deg) {
        case 0:
            return {{-1, 0, 1, -1, 0, 1, -1, 0, 1}, "az0"};
        case 45:
            return {{0, 1, 1, -1, 0, 1, -1, -1, 0}, "az45"};
        case 90:
            return {{-1, -1, -1, 0, 0, 0, 1, 1, 1}, "az90"};
        case 135:
            return {{1, 1, 0, 1, 0, -1, 0, -1, -1}, "az135"};
        default:
            throw ValidationError("directional_kernel: azimuth must be 0, 45, 90 or 135");
    }
}

Kernel3x3 laplacian_kernel() {
    return {{0, -1, 0, -1, 4, -1, 0, -1, 0}, "laplacian"};
}

GrayImage convolve(const GrayImage& img, const Kernel3x3& k) {
    return kernels::convolve3x3(img, k.k);
}

}  // namespace linex::enhance
