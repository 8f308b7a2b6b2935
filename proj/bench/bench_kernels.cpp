// Races the OpenMP kernels against their serial twins on a large image and
// checks the outputs stay bit-identical while doing so.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "linex/kernels.hpp"
#include "linex/parallel.hpp"
#include "linex/rng.hpp"

using namespace linex;

namespace {

double now_ms() {
    using clk = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clk::now().time_since_epoch())
        .count();
}

GrayImage make_image(int w, int h) {
    GrayImage img(w, h);
    Rng rng(1234);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.at(y, x) = 120.0 + 40.0 * std::sin(x * 0.021) * std::cos(y * 0.017) +
                           rng.normal(0.0, 6.0);
    // punch a few holes so the masked paths get exercised too
    for (int y = 400; y < 420; ++y)
        for (int x = 700; x < 760; ++x) img.set_valid(y, x, false);
    return img;
}

double max_abs_diff(const GrayImage& a, const GrayImage& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.valid[i] != b.valid[i]) return 1e30;
        if (a.valid[i]) m = std::max(m, std::fabs(a.values[i] - b.values[i]));
    }
    return m;
}

struct Case {
    std::string name;
    std::function<GrayImage(const GrayImage&)> par_fn;
    std::function<GrayImage(const GrayImage&)> ser_fn;
};

}  // namespace

int main(int argc, char** argv) {
    const int size = argc > 1 ? std::atoi(argv[1]) : 2048;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
    const GrayImage img = make_image(size, size * 3 / 4);
    std::printf("image %dx%d, %d reps, %d threads\n", img.width, img.height, reps,
                par::max_threads());

    const std::array<double, 9> k{0.0, -1.0, 0.0, -1.0, 4.0, -1.0, 0.0, -1.0, 0.0};
    std::vector<Case> cases;
    cases.push_back({"convolve3x3",
                     [&](const GrayImage& i) { return kernels::convolve3x3(i, k); },
                     [&](const GrayImage& i) { return kernels::serial::convolve3x3(i, k); }});
    cases.push_back({"gaussian r=5",
                     [](const GrayImage& i) { return kernels::gaussian_blur(i, 5, 2.5); },
                     [](const GrayImage& i) { return kernels::serial::gaussian_blur(i, 5, 2.5); }});
    cases.push_back({"median 5x5",
                     [](const GrayImage& i) { return kernels::median(i, 5); },
                     [](const GrayImage& i) { return kernels::serial::median(i, 5); }});
    cases.push_back({"sobel |g|", [](const GrayImage& i) {
                         GrayImage gx, gy;
                         kernels::sobel(i, gx, gy);
                         for (std::size_t n = 0; n < gx.values.size(); ++n)
                             gx.values[n] = std::hypot(gx.values[n], gy.values[n]);
                         return gx;
                     },
                     [](const GrayImage& i) {
                         GrayImage gx, gy;
                         kernels::serial::sobel(i, gx, gy);
                         for (std::size_t n = 0; n < gx.values.size(); ++n)
                             gx.values[n] = std::hypot(gx.values[n], gy.values[n]);
                         return gx;
                     }});

    std::printf("%-14s %10s %10s %8s %12s\n", "kernel", "serial ms", "openmp ms",
                "speedup", "max |diff|");
    bool all_match = true;
    for (const auto& c : cases) {
        GrayImage out_s, out_p;
        double t_s = 1e300, t_p = 1e300;  // best of reps
        for (int r = 0; r < reps; ++r) {
            const double a = now_ms();
            out_s = c.ser_fn(img);
            t_s = std::min(t_s, now_ms() - a);
        }
        for (int r = 0; r < reps; ++r) {
            const double a = now_ms();
            out_p = c.par_fn(img);
            t_p = std::min(t_p, now_ms() - a);
        }
        const double diff = max_abs_diff(out_s, out_p);
        if (diff != 0.0) all_match = false;
        std::printf("%-14s %10.2f %10.2f %7.2fx %12g\n", c.name.c_str(), t_s, t_p,
                    t_s / t_p, diff);
    }
    if (!all_match) {
        std::printf("MISMATCH between serial and openmp outputs\n");
        return 1;
    }
    return 0;
}
