#include "linex/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "linex/parallel.hpp"

namespace linex::kernels {

namespace {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

GrayImage like(const GrayImage& img) {
    GrayImage out(img.width, img.height, 0.0, img.georef);
    out.valid = img.valid;
    out.nodata = img.nodata;
    return out;
}

void conv3_row(const GrayImage& in, const std::array<double, 9>& k, GrayImage& out, int r) {
    const int w = in.width, h = in.height;
    for (int c = 0; c < w; ++c) {
        if (!in.valid[in.idx(r, c)]) continue;
        double s = 0.0;
        for (int dr = -1; dr <= 1; ++dr) {
            const int rr = clampi(r + dr, 0, h - 1);
            for (int dc = -1; dc <= 1; ++dc) {
                const int cc = clampi(c + dc, 0, w - 1);
                if (!in.valid[in.idx(rr, cc)]) continue;
                s += k[static_cast<std::size_t>((dr + 1) * 3 + dc + 1)] * in.at(rr, cc);
            }
        }
        out.at(r, c) = s;
    }
}

std::vector<double> gauss_taps(int radius, double sigma) {
    std::vector<double> t(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
        t[static_cast<std::size_t>(i + radius)] = v;
        sum += v;
    }
    for (double& v : t) v /= sum;
    return t;
}

void blur_h_row(const GrayImage& in, const std::vector<double>& taps, int radius,
                GrayImage& out, int r) {
    const int w = in.width;
    for (int c = 0; c < w; ++c) {
        if (!in.valid[in.idx(r, c)]) continue;
        double s = 0.0;
        for (int i = -radius; i <= radius; ++i) {
            const int cc = clampi(c + i, 0, w - 1);
            if (!in.valid[in.idx(r, cc)]) continue;
            s += taps[static_cast<std::size_t>(i + radius)] * in.at(r, cc);
        }
        out.at(r, c) = s;
    }
}

void blur_v_row(const GrayImage& in, const std::vector<double>& taps, int radius,
                GrayImage& out, int r) {
    const int h = in.height;
    for (int c = 0; c < in.width; ++c) {
        if (!in.valid[in.idx(r, c)]) continue;
        double s = 0.0;
        for (int i = -radius; i <= radius; ++i) {
            const int rr = clampi(r + i, 0, h - 1);
            if (!in.valid[in.idx(rr, c)]) continue;
            s += taps[static_cast<std::size_t>(i + radius)] * in.at(rr, c);
        }
        out.at(r, c) = s;
    }
}

constexpr std::array<double, 9> kSobelX = {-1, 0, 1, -2, 0, 2, -1, 0, 1};
constexpr std::array<double, 9> kSobelY = {-1, -2, -1, 0, 0, 0, 1, 2, 1};

void median_row(const GrayImage& in, int window, GrayImage& out, int r) {
    const int hw = window / 2;
    double buf[49];
    for (int c = 0; c < in.width; ++c) {
        if (!in.valid[in.idx(r, c)]) continue;
        int n = 0;
        for (int rr = std::max(0, r - hw); rr <= std::min(in.height - 1, r + hw); ++rr)
            for (int cc = std::max(0, c - hw); cc <= std::min(in.width - 1, c + hw); ++cc)
                if (in.valid[in.idx(rr, cc)]) buf[n++] = in.at(rr, cc);
        std::sort(buf, buf + n);
        out.at(r, c) = (n % 2 == 1) ? buf[n / 2] : 0.5 * (buf[n / 2 - 1] + buf[n / 2]);
    }
}

void stats_row(const GrayImage& in, int window, GrayImage& mean, GrayImage& var, int r) {
    const int hw = window / 2;
    for (int c = 0; c < in.width; ++c) {
        if (!in.valid[in.idx(r, c)]) continue;
        double s = 0.0, s2 = 0.0;
        int n = 0;
        for (int rr = std::max(0, r - hw); rr <= std::min(in.height - 1, r + hw); ++rr)
            for (int cc = std::max(0, c - hw); cc <= std::min(in.width - 1, c + hw); ++cc)
                if (in.valid[in.idx(rr, cc)]) {
                    const double v = in.at(rr, cc);
                    s += v;
                    s2 += v * v;
                    ++n;
                }
        const double m = s / n;
        mean.at(r, c) = m;
        var.at(r, c) = std::max(0.0, s2 / n - m * m);
    }
}

std::vector<std::pair<int, int>> disk_offsets(int radius) {
    std::vector<std::pair<int, int>> off;
    for (int dr = -radius; dr <= radius; ++dr)
        for (int dc = -radius; dc <= radius; ++dc)
            if (dr * dr + dc * dc <= radius * radius) off.emplace_back(dr, dc);
    return off;
}

void dilate_row(const std::vector<std::uint8_t>& mask, int w, int h,
                const std::vector<std::pair<int, int>>& off,
                std::vector<std::uint8_t>& out, int r) {
    for (int c = 0; c < w; ++c) {
        std::uint8_t hit = 0;
        for (const auto& [dr, dc] : off) {
            const int rr = r + dr, cc = c + dc;
            if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
            if (mask[static_cast<std::size_t>(rr) * w + cc]) {
                hit = 1;
                break;
            }
        }
        out[static_cast<std::size_t>(r) * w + c] = hit;
    }
}

}  // namespace

GrayImage convolve3x3(const GrayImage& img, const std::array<double, 9>& k) {
    GrayImage out = like(img);
    par::for_rows(img.height, [&](int r) { conv3_row(img, k, out, r); });
    return out;
}

GrayImage gaussian_blur(const GrayImage& img, int radius, double sigma) {
    if (radius < 1 || sigma <= 0.0) throw ValidationError("gaussian_blur: bad radius/sigma");
    const auto taps = gauss_taps(radius, sigma);
    GrayImage mid = like(img);
    par::for_rows(img.height, [&](int r) { blur_h_row(img, taps, radius, mid, r); });
    GrayImage out = like(img);
    par::for_rows(img.height, [&](int r) { blur_v_row(mid, taps, radius, out, r); });
    return out;
}

void sobel(const GrayImage& img, GrayImage& gx, GrayImage& gy) {
    gx = like(img);
    gy = like(img);
    par::for_rows(img.height, [&](int r) {
        conv3_row(img, kSobelX, gx, r);
        conv3_row(img, kSobelY, gy, r);
    });
}

GrayImage median(const GrayImage& img, int window) {
    if (window < 1 || window > 7 || window % 2 == 0) throw ValidationError("median: bad window");
    GrayImage out = like(img);
    par::for_rows(img.height, [&](int r) { median_row(img, window, out, r); });
    return out;
}

void window_stats(const GrayImage& img, int window, GrayImage& mean, GrayImage& var) {
    if (window < 1 || window % 2 == 0) throw ValidationError("window_stats: bad window");
    mean = like(img);
    var = like(img);
    par::for_rows(img.height, [&](int r) { stats_row(img, window, mean, var, r); });
}

std::vector<std::uint8_t> dilate_disk(const std::vector<std::uint8_t>& mask,
                                      int width, int height, int radius) {
    if (radius < 0) throw ValidationError("dilate_disk: negative radius");
    if (radius == 0) return mask;
    const auto off = disk_offsets(radius);
    std::vector<std::uint8_t> out(mask.size(), 0);
    par::for_rows(height, [&](int r) { dilate_row(mask, width, height, off, out, r); });
    return out;
}

namespace serial {

GrayImage convolve3x3(const GrayImage& img, const std::array<double, 9>& k) {
    GrayImage out = like(img);
    for (int r = 0; r < img.height; ++r) conv3_row(img, k, out, r);
    return out;
}

GrayImage gaussian_blur(const GrayImage& img, int radius, double sigma) {
    if (radius < 1 || sigma <= 0.0) throw ValidationError("gaussian_blur: bad radius/sigma");
    const auto taps = gauss_taps(radius, sigma);
    GrayImage mid = like(img);
    for (int r = 0; r < img.height; ++r) blur_h_row(img, taps, radius, mid, r);
    GrayImage out = like(img);
    for (int r = 0; r < img.height; ++r) blur_v_row(mid, taps, radius, out, r);
    return out;
}

void sobel(const GrayImage& img, GrayImage& gx, GrayImage& gy) {
    gx = like(img);
    gy = like(img);
    for (int r = 0; r < img.height; ++r) {
        conv3_row(img, kSobelX, gx, r);
        conv3_row(img, kSobelY, gy, r);
    }
}

GrayImage median(const GrayImage& img, int window) {
    if (window < 1 || window > 7 || window % 2 == 0) throw ValidationError("median: bad window");
    GrayImage out = like(img);
    for (int r = 0; r < img.height; ++r) median_row(img, window, out, r);
    return out;
}

void window_stats(const GrayImage& img, int window, GrayImage& mean, GrayImage& var) {
    if (window < 1 || window % 2 == 0) throw ValidationError("window_stats: bad window");
    mean = like(img);
    var = like(img);
    for (int r = 0; r < img.height; ++r) stats_row(img, window, mean, var, r);
}

std::vector<std::uint8_t> dilate_disk(const std::vector<std::uint8_t>& mask,
                                      int width, int height, int radius) {
    if (radius < 0) throw ValidationError("dilate_disk: negative radius");
    if (radius == 0) return mask;
    const auto off = disk_offsets(radius);
    std::vector<std::uint8_t> out(mask.size(), 0);
    for (int r = 0; r < height; ++r) dilate_row(mask, width, height, off, out, r);
    return out;
}

}  // namespace serial

}  // namespace linex::kernels
