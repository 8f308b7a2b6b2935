// Release gate: ten self-contained checks over the full library, one
// PASS/FAIL line each. Run with no arguments for everything, or pass
// criterion numbers to run a subset. Exit code = number of failures.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "linex/analyze.hpp"
#include "linex/detect.hpp"
#include "linex/dimred.hpp"
#include "linex/hydro.hpp"
#include "linex/io.hpp"
#include "linex/kernels.hpp"
#include "linex/pipeline.hpp"
#include "linex/raster.hpp"
#include "linex/rng.hpp"
#include "linex/scoring.hpp"
#include "linex/smallmat.hpp"
#include "linex/synthetic.hpp"
#include "linex/vectorize.hpp"

#ifndef LINEX_REPO_ROOT
#define LINEX_REPO_ROOT ".."
#endif

namespace fs = std::filesystem;
using namespace linex;

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "linex_acceptance";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

// ---------------------------------------------------------------- 1: pca

// Closed-form eigenvalues of a symmetric 2x2 / 3x3 via the characteristic
// polynomial -- a different route than the iterative solver under test.
std::vector<double> sym_eigs_oracle(const SmallMat& a) {
    std::vector<double> out;
    if (a.rows == 1) {
        out = {a(0, 0)};
    } else if (a.rows == 2) {
        const double tr = a(0, 0) + a(1, 1);
        const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
        out = {tr / 2.0 + disc, tr / 2.0 - disc};
    } else {
        const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
        const double q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
        if (p1 == 0.0) {
            out = {a(0, 0), a(1, 1), a(2, 2)};
        } else {
            const double p2 = (a(0, 0) - q) * (a(0, 0) - q) +
                              (a(1, 1) - q) * (a(1, 1) - q) +
                              (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
            const double p = std::sqrt(p2 / 6.0);
            auto b = [&](int r, int c) { return (r == c ? a(r, c) - q : a(r, c)) / p; };
            const double detb = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                                b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                                b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
            const double r = std::clamp(detb / 2.0, -1.0, 1.0);
            const double phi = std::acos(r) / 3.0;
            const double e1 = q + 2.0 * p * std::cos(phi);
            const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
            out = {e1, 3.0 * q - e1 - e3, e3};
        }
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

bool c1_pca_oracle(std::string& note) {
    const double t0 = now_s();
    struct Case { int w, h, b; double scale; };
    const std::vector<Case> cases = {
        {8, 8, 3, 255.0}, {5, 7, 3, 10.0}, {8, 2, 3, 40.0},
        {4, 4, 2, 255.0}, {3, 3, 2, 10.0},
    };
    double worst_rel = 0.0, worst_orth = 0.0, worst_trace = 0.0;
    int k = 0;
    for (const auto& cs : cases) {
        Rng rng(100 + k++);
        MultibandRaster r(cs.w, cs.h, cs.b);
        for (auto& v : r.samples) v = rng.uniform(0.0, cs.scale);
        const auto d = dimred::to_data_matrix(r);
        const auto cov = dimred::covariance(d);
        const auto res = dimred::pca(d);

        const auto want = sym_eigs_oracle(cov);
        double trace = 0.0;
        for (int i = 0; i < cov.rows; ++i) trace += cov(i, i);
        for (std::size_t i = 0; i < want.size(); ++i) {
            const double denom = std::max(std::abs(want[i]), 1e-9 * trace);
            worst_rel = std::max(worst_rel,
                                 std::abs(res.eigenvalues[i] - want[i]) / denom);
        }

        const SmallMat& P = res.projection.m;
        const SmallMat ptp = matmul(P.transposed(), P);
        const SmallMat ppt = matmul(P, P.transposed());
        for (int i = 0; i < ptp.rows; ++i)
            for (int j = 0; j < ptp.cols; ++j) {
                const double id = i == j ? 1.0 : 0.0;
                worst_orth = std::max(worst_orth, std::abs(ptp(i, j) - id));
                worst_orth = std::max(worst_orth, std::abs(ppt(i, j) - id));
            }

        double sum = 0.0;
        for (double e : res.eigenvalues) sum += e;
        worst_trace = std::max(worst_trace, std::abs(sum - trace));
    }
    const double dt = now_s() - t0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "eig rel %.2e, orthogonality %.2e, trace %.2e, %.3f s",
                  worst_rel, worst_orth, worst_trace, dt);
    note = buf;
    return worst_rel <= 1e-6 && worst_orth <= 1e-8 && worst_trace <= 1e-8 &&
           dt < 1.0;
}

// ---------------------------------------------------------------- 2: ica

bool c2_ica_recovery(std::string& note) {
    const double t0 = now_s();
    const int n = 10000;
    int passes = 0;
    double worst_cond = 0.0;
    for (int seed = 1; seed <= 20; ++seed) {
        Rng rng(1000 + seed);
        // unit-variance non-Gaussian sources: uniform, Laplace, Rademacher
        std::vector<std::vector<double>> s(3, std::vector<double>(n));
        const double u3 = std::sqrt(3.0);
        for (int j = 0; j < n; ++j) s[0][j] = rng.uniform(-u3, u3);
        for (int j = 0; j < n; ++j) s[1][j] = rng.laplace();
        for (int j = 0; j < n; ++j) s[2][j] = rng.uniform() < 0.5 ? 1.0 : -1.0;

        SmallMat A(3, 3);
        double cond = 0.0;
        do {
            for (auto& v : A.a) v = rng.uniform(-1.0, 1.0);
            const auto ev = jacobi_eigen(matmul(A.transposed(), A)).values;
            cond = ev.back() > 0.0 ? std::sqrt(ev.front() / ev.back()) : 1e30;
        } while (cond >= 10.0);
        worst_cond = std::max(worst_cond, cond);

        dimred::DataMatrix d;
        d.n_samples = n;
        d.n_vars = 3;
        d.values.resize(static_cast<std::size_t>(n) * 3);
        d.mean.assign(3, 0.0);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < 3; ++i) {
                double x = 0.0;
                for (int k = 0; k < 3; ++k) x += A(i, k) * s[k][j];
                d.values[static_cast<std::size_t>(j) * 3 + i] = x;
                d.mean[i] += x / n;
            }
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < 3; ++i)
                d.values[static_cast<std::size_t>(j) * 3 + i] -= d.mean[i];

        dimred::IcaOptions opt;
        opt.seed = static_cast<std::uint64_t>(seed);
        const auto res = dimred::fast_ica(d, opt);
        const SmallMat G = matmul(res.unmixing.m, A);

        // signed permutation within 0.05 per entry
        bool ok = true;
        std::array<bool, 3> used{};
        for (int i = 0; i < 3 && ok; ++i) {
            int dom = 0;
            for (int jj = 1; jj < 3; ++jj)
                if (std::abs(G(i, jj)) > std::abs(G(i, dom))) dom = jj;
            if (used[dom]) ok = false;
            used[dom] = true;
            for (int jj = 0; jj < 3 && ok; ++jj) {
                const double want = jj == dom ? 1.0 : 0.0;
                if (std::abs(std::abs(G(i, jj)) - want) > 0.05) ok = false;
            }
        }
        passes += ok ? 1 : 0;
    }
    const double dt = now_s() - t0;
    char buf[120];
    std::snprintf(buf, sizeof buf, "%d/20 seeds, max cond %.2f, %.2f s",
                  passes, worst_cond, dt);
    note = buf;
    return passes >= 19 && dt < 10.0;
}

// ---------------------------------------------------------------- 3: mnf

bool c3_mnf_ordering(std::string& note) {
    const double t0 = now_s();
    const int w = 64, h = 64;
    int passes = 0;
    double worst_rho = 1.0;
    for (int seed = 1; seed <= 10; ++seed) {
        Rng rng(300 + seed);
        std::vector<double> clean(static_cast<std::size_t>(w) * h);
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j)
                clean[static_cast<std::size_t>(i) * w + j] =
                    60.0 * std::sin(2.0 * kPi * i / 17.3) *
                        std::cos(2.0 * kPi * j / 23.1) +
                    25.0 * std::sin(2.0 * kPi * (i + j) / 41.7);

        // shared signal, per-band noise growing -> per-band SNR shrinking
        const double load[3] = {1.0, 0.8, 0.5};
        const double sigma[3] = {0.5, 2.0, 6.0};
        MultibandRaster r(w, h, 3);
        for (int b = 0; b < 3; ++b)
            for (std::size_t p = 0; p < r.plane(); ++p)
                r.samples[b * r.plane() + p] =
                    load[b] * clean[p] + sigma[b] * rng.normal();

        dimred::MnfResult detail;
        const auto cs = dimred::mnf(r, &detail);
        bool strict = true;
        for (std::size_t k = 0; k + 1 < detail.snr.size(); ++k)
            if (!(detail.snr[k] > detail.snr[k + 1])) strict = false;

        const GrayImage comp = cs.components.band(0);
        double ms = 0.0, mc = 0.0;
        for (std::size_t p = 0; p < clean.size(); ++p) {
            ms += clean[p];
            mc += comp.values[p];
        }
        ms /= static_cast<double>(clean.size());
        mc /= static_cast<double>(clean.size());
        double sxy = 0.0, sxx = 0.0, syy = 0.0;
        for (std::size_t p = 0; p < clean.size(); ++p) {
            const double dx = clean[p] - ms, dy = comp.values[p] - mc;
            sxy += dx * dy;
            sxx += dx * dx;
            syy += dy * dy;
        }
        const double rho = std::abs(sxy / std::sqrt(sxx * syy));
        worst_rho = std::min(worst_rho, rho);
        passes += (strict && rho > 0.9) ? 1 : 0;
    }
    const double dt = now_s() - t0;
    char buf[120];
    std::snprintf(buf, sizeof buf, "%d/10 seeds, min |rho| %.3f, %.2f s",
                  passes, worst_rho, dt);
    note = buf;
    return passes == 10 && dt < 5.0;
}

// ---------------------------------------------------------------- 4: canny

bool c4_canny_contract(std::string& note) {
    // a clean vertical step must come out as a one-pixel-wide column
    GrayImage step(64, 64);
    for (int r = 0; r < 64; ++r)
        for (int c = 0; c < 64; ++c) step.at(r, c) = c < 32 ? 40.0 : 200.0;
    const auto e = detect::canny(step, {5, 50.0});
    bool thin = e.edge_count() > 0;
    for (int r = 0; r < e.height && thin; ++r)
        for (int c = 0; c < e.width && thin; ++c) {
            if (!e.at(r, c)) continue;
            if (c > 0 && e.at(r, c - 1)) thin = false;
            if (c + 1 < e.width && e.at(r, c + 1)) thin = false;
        }

    // raising the hysteresis threshold can only thin the edge set
    bool shrink = true;
    for (int k = 0; k < 10 && shrink; ++k) {
        Rng rng(400 + k);
        GrayImage g(64, 64);
        for (auto& v : g.values) v = rng.uniform(0.0, 255.0);
        g = kernels::gaussian_blur(g, 2, 1.0);
        detect::EdgeMap prev;
        std::size_t first = 0, last = 0;
        for (int t = 10; t <= 70; t += 10) {
            const auto cur = detect::canny(g, {5, static_cast<double>(t)});
            if (t == 10) {
                first = cur.edge_count();
            } else {
                for (std::size_t p = 0; p < cur.edge.size() && shrink; ++p)
                    if (cur.edge[p] && !prev.edge[p]) shrink = false;
            }
            last = cur.edge_count();
            prev = cur;
        }
        if (first <= last) shrink = false;
    }
    note = std::string("step thin: ") + (thin ? "yes" : "NO") +
           ", threshold sweep nested: " + (shrink ? "yes" : "NO");
    return thin && shrink;
}

// ----------------------------------------------------- 5: threshold knobs

detect::EdgeMap edges_from_strokes(int w, int h,
                                   const std::vector<std::array<int, 3>>& strokes) {
    detect::EdgeMap e;
    e.width = w;
    e.height = h;
    e.edge.assign(static_cast<std::size_t>(w) * h, 0);
    for (const auto& s : strokes)
        for (int c = s[1]; c < s[1] + s[2]; ++c)
            e.edge[static_cast<std::size_t>(s[0]) * w + c] = 1;
    return e;
}

std::size_t lines_from_edges(const detect::EdgeMap& e, int curve_length,
                             double fitting, double angular, double linking) {
    auto chains = vectorize::drop_short(vectorize::trace_curves(e), curve_length);
    LineamentSet set;
    int id = 0;
    for (const auto& ch : chains) {
        Lineament l = vectorize::fit_polyline(ch, fitting);
        l.id = id++;
        set.lines.push_back(std::move(l));
    }
    return vectorize::link_polylines(std::move(set), angular, linking).size();
}

bool nonincreasing(const std::vector<double>& xs) {
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (xs[i + 1] > xs[i]) return false;
    return true;
}

bool c5_threshold_semantics(std::string& note) {
    std::ostringstream msg;
    bool all = true;
    auto report = [&](const char* name, bool ok, const std::vector<double>& xs) {
        msg << name << (ok ? ":ok" : ":BAD") << " [";
        for (std::size_t i = 0; i < xs.size(); ++i)
            msg << (i ? " " : "") << xs[i];
        msg << "]  ";
        all = all && ok;
    };

    // smoothing radius up -> noise edges down
    {
        Rng rng(500);
        GrayImage g(96, 96);
        for (auto& v : g.values) v = rng.uniform(0.0, 255.0);
        std::vector<double> counts;
        for (int radius = 3; radius <= 8; ++radius)
            counts.push_back(static_cast<double>(
                detect::canny(g, {radius, 50.0}).edge_count()));
        report("filter_radius", nonincreasing(counts) && counts.front() > counts.back(),
               counts);
    }
    // hysteresis threshold up -> edge pixels down
    {
        Rng rng(501);
        GrayImage g(96, 96);
        for (auto& v : g.values) v = rng.uniform(0.0, 255.0);
        g = kernels::gaussian_blur(g, 2, 1.0);
        std::vector<double> counts;
        for (int t = 10; t <= 70; t += 10)
            counts.push_back(static_cast<double>(
                detect::canny(g, {5, static_cast<double>(t)}).edge_count()));
        report("edge_gradient", nonincreasing(counts) && counts.front() > counts.back(),
               counts);
    }
    // minimum chain length up -> accepted lineaments down
    {
        const auto e = edges_from_strokes(
            80, 200, {{10, 10, 15}, {60, 10, 25}, {110, 10, 35}, {160, 10, 45}});
        std::vector<double> counts;
        for (int L = 10; L <= 50; L += 10)
            counts.push_back(static_cast<double>(lines_from_edges(e, L, 3.0, 10.0, 10.0)));
        report("curve_length", nonincreasing(counts) && counts.front() == 4 &&
                                   counts.back() == 0,
               counts);
    }
    // fitting tolerance up -> simpler polylines (fewer vertices kept)
    {
        auto tent_chain = [](int height, int half) {
            vectorize::PixelChain ch;
            for (int c = 0; c <= 40; ++c) {
                const double t = 1.0 - std::abs(c - 20) / static_cast<double>(half);
                ch.push_back({static_cast<int>(std::lround(
                                  std::max(0.0, t) * height)),
                              c});
            }
            return ch;
        };
        const std::vector<vectorize::PixelChain> chains = {
            tent_chain(3, 12), tent_chain(5, 12), tent_chain(7, 10)};
        std::vector<double> verts;
        for (double tol = 2.0; tol <= 5.0; tol += 1.0) {
            std::size_t total = 0;
            for (const auto& ch : chains)
                total += vectorize::fit_polyline(ch, tol).vertices.size();
            verts.push_back(static_cast<double>(total));
        }
        report("line_fitting_error",
               nonincreasing(verts) && verts.front() > verts.back(), verts);
    }
    // angular gate up -> more links accepted -> fewer polylines
    {
        LineamentSet base;
        int id = 0;
        for (const double delta : {5.0, 10.0, 15.0}) {
            const double y = 20.0 + 100.0 * id / 2.0;
            const double a = (90.0 + delta) * kPi / 180.0;
            Lineament l1{id++, {{0.0, y}, {30.0, y}}};
            Lineament l2{id++,
                         {{40.0, y},
                          {40.0 + 30.0 * std::sin(a), y - 30.0 * std::cos(a)}}};
            base.lines.push_back(l1);
            base.lines.push_back(l2);
        }
        std::vector<double> counts;
        for (const double ang : {3.0, 7.0, 12.0, 20.0})
            counts.push_back(static_cast<double>(
                vectorize::link_polylines(base, ang, 20.0).size()));
        report("angular_difference",
               nonincreasing(counts) && counts.front() == 6 && counts.back() == 3,
               counts);
    }
    // gap gate up -> more links accepted -> fewer polylines
    {
        LineamentSet base;
        int id = 0;
        for (const double gap : {15.0, 25.0, 35.0, 45.0}) {
            const double y = 20.0 + 60.0 * (id / 2);
            Lineament l1{id++, {{0.0, y}, {40.0, y}}};
            Lineament l2{id++, {{40.0 + gap, y}, {90.0 + gap, y}}};
            base.lines.push_back(l1);
            base.lines.push_back(l2);
        }
        std::vector<double> counts;
        for (double ld = 10.0; ld <= 50.0; ld += 10.0)
            counts.push_back(static_cast<double>(
                vectorize::link_polylines(base, 10.0, ld).size()));
        report("linking_distance",
               nonincreasing(counts) && counts.front() == 8 && counts.back() == 4,
               counts);
    }
    note = msg.str();
    return all;
}

// ----------------------------------------------------- 6: stream overlap

bool c6_stream_overlap(std::string& note) {
    hydro::StreamMask buf;
    buf.width = 200;
    buf.height = 41;
    buf.buffer_radius_px = 5;
    buf.mask.assign(static_cast<std::size_t>(buf.width) * buf.height, 0);
    for (int r = 0; r < buf.height; ++r)
        for (int c = 0; c < 120; ++c) buf.mask[static_cast<std::size_t>(r) * 200 + c] = 1;

    // 100 px long horizontals whose in-buffer share is exactly 40/50/60 %
    LineamentSet set;
    auto mk = [&](int id, double x0, double y) {
        set.lines.push_back({id, {{x0, y}, {x0 + 100.0, y}}});
    };
    mk(1, 79.5, 10.0);
    mk(2, 69.5, 20.0);
    mk(3, 59.5, 30.0);

    const auto kept = hydro::remove_stream_lineaments(set, buf);
    bool ok = kept.size() == 2;
    bool saw1 = false, saw2 = false;
    for (const auto& l : kept.lines) {
        saw1 = saw1 || l.id == 1;
        saw2 = saw2 || l.id == 2;
    }
    ok = ok && saw1 && saw2;
    note = "kept " + std::to_string(kept.size()) + "/3, 60% line " +
           (ok ? "removed" : "WRONG");
    return ok;
}

// ----------------------------------------------------- 7 & 9: end to end

struct E2E {
    score::MatchScore match;
    int dominant_bin = -1;
    double fuzzy_min = 0.0, fuzzy_max = 0.0;
    double seconds = 0.0;
    fs::path out;
};

E2E run_e2e(const fs::path& dir, const std::string& out_name) {
    const synth::SyntheticScene scene = synth::make_synthetic(synth::default_scene(), 7);
    fs::create_directories(dir);
    const auto raster = dir / "scene.bsq";
    const auto dem = dir / "dem.asc";
    const auto occ = dir / "occurrences.csv";
    if (!fs::exists(raster)) {
        io::write_multiband(scene.raster, raster.string());
        io::write_ascii_grid(scene.dem, dem.string());
        io::write_occurrences(scene.occurrences, occ.string());
    }

    pipeline::PipelineConfig cfg;
    cfg.input_raster = raster.string();
    cfg.input_dem = dem.string();
    cfg.occurrences = occ.string();
    cfg.out_dir = (dir / out_name).string();
    cfg.threads = 1;

    E2E r;
    const double t0 = now_s();
    const auto report = pipeline::run_pipeline(cfg);
    r.seconds = now_s() - t0;
    r.out = dir / out_name;

    const auto found = io::read_lineaments_geojson((r.out / "lineaments.geojson").string());
    r.match = score::score_against_truth(found, scene.truth, 3.0);
    r.dominant_bin = report["analyze"]["dominant_bin"].get<int>();

    const auto dens = io::read_ascii_grid((r.out / "density.asc").string());
    r.fuzzy_min = 1e30;
    r.fuzzy_max = -1e30;
    for (std::size_t p = 0; p < dens.values.size(); ++p) {
        if (!dens.valid[p]) continue;
        r.fuzzy_min = std::min(r.fuzzy_min, dens.values[p]);
        r.fuzzy_max = std::max(r.fuzzy_max, dens.values[p]);
    }
    return r;
}

bool c7_end_to_end(std::string& note) {
    const E2E r = run_e2e(work_dir() / "e2e", "out");
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "recall %.3f, precision %.3f, dominant bin %d, fuzzy [%g,%g], %.1f s",
                  r.match.recall_len, r.match.precision_len, r.dominant_bin,
                  r.fuzzy_min, r.fuzzy_max, r.seconds);
    note = buf;
    return r.match.recall_len >= 0.8 && r.match.precision_len >= 0.7 &&
           r.dominant_bin == 10 && r.fuzzy_min >= 0.0 &&
           std::abs(r.fuzzy_max - 1.0) <= 1e-12 && r.seconds < 60.0;
}

bool c9_determinism(std::string& note) {
    const fs::path dir = work_dir() / "repro";
    run_e2e(dir, "run_a");
    run_e2e(dir, "run_b");
    const char* files[] = {"lineaments_raw.geojson", "lineaments.geojson",
                           "streams.asc", "density.asc", "rose.csv",
                           "correlation.csv"};
    std::string differing;
    for (const char* f : files) {
        if (slurp(dir / "run_a" / f) != slurp(dir / "run_b" / f))
            differing += std::string(f) + " ";
    }
    note = differing.empty() ? "6 products byte-identical"
                             : "differs: " + differing;
    return differing.empty();
}

// ---------------------------------------------------------------- 8: d8

bool c8_d8_oracle(std::string& note) {
    constexpr int kDr[8] = {0, 1, 1, 1, 0, -1, -1, -1};
    constexpr int kDc[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    const int w = 16, h = 16;
    for (int seed = 0; seed < 10; ++seed) {
        Rng rng(800 + seed);
        GrayImage dem(w, h);
        for (auto& v : dem.values) v = rng.uniform(0.0, 100.0);
        const auto filled = hydro::fill_sinks(dem);
        const auto f = hydro::d8_flow(filled);

        // walk every cell down its pointer chain and count the visits
        std::vector<std::int64_t> acc(static_cast<std::size_t>(w) * h, 0);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c) {
                int cr = r, cc = c, steps = 0;
                while (true) {
                    acc[static_cast<std::size_t>(cr) * w + cc] += 1;
                    const int code = f.direction[static_cast<std::size_t>(cr) * w + cc];
                    if (code == 0) break;
                    int k = 0;
                    while ((1 << k) != code) ++k;
                    cr += kDr[k];
                    cc += kDc[k];
                    if (++steps > w * h) {
                        note = "cycle in flow grid, seed " + std::to_string(seed);
                        return false;
                    }
                }
            }
        for (std::size_t p = 0; p < acc.size(); ++p)
            if (acc[p] != f.accumulation[p]) {
                note = "accumulation mismatch at cell " + std::to_string(p) +
                       ", seed " + std::to_string(seed);
                return false;
            }
    }
    note = "10/10 grids match exactly";
    return true;
}

// ------------------------------------------------------ 10: real data

bool c10_real_data_docs(std::string& note) {
    const fs::path readme = fs::path(LINEX_REPO_ROOT) / "README.md";
    if (!fs::exists(readme)) {
        note = "README.md missing";
        return false;
    }
    const std::string text = slurp(readme);
    const char* needles[] = {"## Running on a real scene", "lineaments.geojson",
                             "density.asc", "rose.csv", "correlation.csv"};
    std::string missing;
    for (const char* n : needles)
        if (text.find(n) == std::string::npos) missing += std::string(n) + " ";
    note = missing.empty()
               ? "workflow documented; runs outside the test suite by design"
               : "README lacks: " + missing;
    return missing.empty();
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int num;
        const char* label;
        std::function<bool(std::string&)> fn;
    };
    const std::vector<Criterion> all = {
        {1, "pca-oracle", c1_pca_oracle},
        {2, "ica-recovery", c2_ica_recovery},
        {3, "mnf-ordering", c3_mnf_ordering},
        {4, "canny-contract", c4_canny_contract},
        {5, "threshold-semantics", c5_threshold_semantics},
        {6, "stream-overlap", c6_stream_overlap},
        {7, "end-to-end", c7_end_to_end},
        {8, "d8-oracle", c8_d8_oracle},
        {9, "determinism", c9_determinism},
        {10, "real-data-docs", c10_real_data_docs},
    };

    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) {
        try {
            wanted.push_back(std::stoi(argv[i]));
        } catch (...) {
            std::fprintf(stderr, "usage: %s [criterion numbers]\n", argv[0]);
            return 2;
        }
    }

    int failures = 0, ran = 0;
    for (const auto& c : all) {
        if (!wanted.empty() &&
            std::find(wanted.begin(), wanted.end(), c.num) == wanted.end())
            continue;
        ++ran;
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("ACCEPTANCE %d %s %s (%s)\n", c.num, ok ? "PASS" : "FAIL",
                    c.label, detail.c_str());
        std::fflush(stdout);
        failures += ok ? 0 : 1;
    }
    std::printf("ACCEPTANCE SUMMARY %d/%d passed\n", ran - failures, ran);
    return failures;
}
