#include <cmath>
#include <numeric>

#include "doctest.h"
#include "linex/enhance.hpp"
#include "linex/rng.hpp"

using namespace linex;

TEST_CASE("lee filter damps a spike by exactly v/(v+sigma^2)") {
    // flat field with one spike; the windowed mean and variance are known in
    // closed form, so the output pixel is too
    GrayImage img(5, 5, 10.0);
    img.at(2, 2) = 100.0;
    const double sigma = 5.0;
    const GrayImage out = enhance::lee_filter(img, 3, sigma);

    const double m = (8.0 * 10.0 + 100.0) / 9.0;
    double v = 0.0;
    for (int i = 0; i < 8; ++i) v += (10.0 - m) * (10.0 - m);
    v = (v + (100.0 - m) * (100.0 - m)) / 9.0;
    const double k = v / (v + sigma * sigma);
    CHECK(out.at(2, 2) == doctest::Approx(m + k * (100.0 - m)).epsilon(1e-12));

    // far from the spike nothing changes: zero variance means k*(c-m) = 0
    CHECK(out.at(0, 0) == doctest::Approx(10.0));
}

TEST_CASE("lee filter with zero sigma is the identity") {
    GrayImage img(7, 7);
    Rng rng(4);
    for (auto& v : img.values) v = rng.uniform(0.0, 50.0);
    const GrayImage out = enhance::lee_filter(img, 3, 0.0);
    for (std::size_t i = 0; i < img.values.size(); ++i)
        CHECK(out.values[i] == doctest::Approx(img.values[i]).epsilon(1e-12));
}

TEST_CASE("lee filter estimates sigma from the flattest windows") {
    // mostly flat with gentle noise; the estimate should land near the true
    // noise level, not near the contamination from the bright block
    GrayImage img(60, 60, 100.0);
    Rng rng(9);
    for (auto& v : img.values) v += rng.normal(0.0, 2.0);
    for (int y = 10; y < 20; ++y)
        for (int x = 10; x < 20; ++x) img.at(y, x) += 80.0;
    const double est = enhance::estimate_lee_sigma(img);
    CHECK(est > 0.5);
    CHECK(est < 4.0);

    // and the parameterless overload runs end to end
    CHECK_NOTHROW(enhance::lee_filter(img));
}

TEST_CASE("lee filter validates the window size") {
    GrayImage img(9, 9, 1.0);
    CHECK_THROWS_AS(enhance::lee_filter(img, 4), ValidationError);
    CHECK_THROWS_AS(enhance::lee_filter(img, 9), ValidationError);
    CHECK_NOTHROW(enhance::lee_filter(img, 5));
    CHECK_NOTHROW(enhance::lee_filter(img, 7));
}

TEST_CASE("median filter kills salt noise but keeps a 3-wide ridge") {
    GrayImage img(15, 15, 0.0);
    img.at(7, 7) = 200.0;  // isolated spike
    GrayImage ridge(15, 15, 0.0);
    for (int y = 0; y < 15; ++y)
        for (int x = 6; x <= 8; ++x) ridge.at(y, x) = 50.0;

    const GrayImage spike_out = enhance::median_filter(img, 3);
    CHECK(spike_out.at(7, 7) == 0.0);

    const GrayImage ridge_out = enhance::median_filter(ridge, 3);
    CHECK(ridge_out.at(7, 7) == 50.0);  // 3-wide feature survives a 3x3 median

    CHECK_THROWS_AS(enhance::median_filter(img, 7), ValidationError);
}

TEST_CASE("directional kernels are zero-sum compass stencils") {
    for (int az : {0, 45, 90, 135}) {
        const auto k = enhance::directional_kernel(az);
        CHECK(std::accumulate(k.k.begin(), k.k.end(), 0.0) == 0.0);
    }
    CHECK_THROWS_AS(enhance::directional_kernel(30), ValidationError);

    // az 0 looks for north-south features: the stencil differentiates
    // east-west
    const auto k0 = enhance::directional_kernel(0);
    const std::array<double, 9> want0{-1, 0, 1, -1, 0, 1, -1, 0, 1};
    CHECK(k0.k == want0);
    const auto k90 = enhance::directional_kernel(90);
    const std::array<double, 9> want90{-1, -1, -1, 0, 0, 0, 1, 1, 1};
    CHECK(k90.k == want90);
}

TEST_CASE("each compass kernel responds strongest to its own azimuth") {
    // vertical step edge = north-south lineament = azimuth 0
    GrayImage img(21, 21, 0.0);
    for (int y = 0; y < 21; ++y)
        for (int x = 11; x < 21; ++x) img.at(y, x) = 100.0;

    double best_az = -1, best_resp = -1;
    for (int az : {0, 45, 90, 135}) {
        const GrayImage resp = enhance::convolve(img, enhance::directional_kernel(az));
        double peak = 0.0;
        for (int y = 5; y < 16; ++y)
            for (int x = 5; x < 16; ++x) peak = std::max(peak, std::fabs(resp.at(y, x)));
        if (peak > best_resp) {
            best_resp = peak;
            best_az = az;
        }
    }
    CHECK(best_az == 0);
}

TEST_CASE("laplacian kernel is the 4-neighbor stencil and nulls ramps") {
    const auto k = enhance::laplacian_kernel();
    const std::array<double, 9> want{0, -1, 0, -1, 4, -1, 0, -1, 0};
    CHECK(k.k == want);

    GrayImage ramp(9, 9);
    for (int y = 0; y < 9; ++y)
        for (int x = 0; x < 9; ++x) ramp.at(y, x) = 3.0 * x - 2.0 * y + 5.0;
    const GrayImage out = enhance::convolve(ramp, k);
    for (int y = 1; y < 8; ++y)
        for (int x = 1; x < 8; ++x)
            CHECK(out.at(y, x) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("directional kernel names are stable identifiers") {
    CHECK(enhance::directional_kernel(0).name == "az0");
    CHECK(enhance::directional_kernel(45).name == "az45");
    CHECK(enhance::directional_kernel(90).name == "az90");
    CHECK(enhance::directional_kernel(135).name == "az135");
    CHECK(enhance::laplacian_kernel().name == "laplacian");
}
