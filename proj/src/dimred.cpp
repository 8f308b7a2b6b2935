#include "linex/dimred.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "linex/parallel.hpp"
#include "linex/rng.hpp"

namespace linex::dimred {

namespace {

// Combine per-row partial vectors with a pairwise tree over the row index, so
// the summation order is fixed by the grid shape alone.
std::vector<double> combine_rows(std::vector<std::vector<double>>& parts) {
    std::size_t width = parts.size();
    while (width > 1) {
        const std::size_t half = (width + 1) / 2;
        for (std::size_t i = 0; i + half < width; ++i)
            for (std::size_t k = 0; k < parts[i].size(); ++k)
                parts[i][k] += parts[i + half][k];
        width = half;
    }
    return parts.empty() ? std::vector<double>{} : std::move(parts[0]);
}

ScoreKind score_kind_for(ProjectionKind k) {
    switch (k) {
        case ProjectionKind::pca: return ScoreKind::eigenvalue_variance;
        case ProjectionKind::mnf: return ScoreKind::snr_eigenvalue;
        case ProjectionKind::ica_unmixing: return ScoreKind::abs_kurtosis;
    }
    return ScoreKind::eigenvalue_variance;
}

}  // namespace

DataMatrix to_data_matrix(const MultibandRaster& r) {
    DataMatrix d;
    d.n_vars = r.bands;
    const std::size_t nvalid = r.valid_count();
    if (nvalid == 0) throw Error("to_data_matrix: no valid samples");
    if (nvalid <= static_cast<std::size_t>(r.bands))
        throw Error("to_data_matrix: too few valid pixels (" + std::to_string(nvalid) +
                    " for " + std::to_string(r.bands) + " bands)");
    d.n_samples = nvalid;
    d.values.resize(nvalid * static_cast<std::size_t>(r.bands));
    std::size_t row = 0;
    for (std::size_t p = 0; p < r.plane(); ++p) {
        if (!r.valid[p]) continue;
        for (int b = 0; b < r.bands; ++b)
            d.values[row * r.bands + b] = r.samples[b * r.plane() + p];
        ++row;
    }
    d.mean.resize(static_cast<std::size_t>(r.bands));
    for (int b = 0; b < r.bands; ++b) {
        const double s = par::chunked_reduce(
            d.n_samples, [&](std::size_t i) { return d.at(i, b); });
        d.mean[static_cast<std::size_t>(b)] = s / static_cast<double>(d.n_samples);
    }
    par::for_rows(static_cast<int>(d.n_samples), [&](int i) {
        for (int b = 0; b < d.n_vars; ++b)
            d.at(static_cast<std::size_t>(i), b) -= d.mean[static_cast<std::size_t>(b)];
    });
    return d;
}

SmallMat covariance(const DataMatrix& d) {
    if (d.n_samples < 2) throw Error("covariance: need at least 2 samples");
    const int nv = d.n_vars;
    SmallMat cov(nv, nv);
    for (int a = 0; a < nv; ++a)
        for (int b = a; b < nv; ++b) {
            const double s = par::chunked_reduce(
                d.n_samples, [&](std::size_t i) { return d.at(i, a) * d.at(i, b); });
            cov(a, b) = cov(b, a) = s / static_cast<double>(d.n_samples - 1);
        }
    return cov;
}

PcaResult pca(const DataMatrix& d) {
    const SmallMat cov = covariance(d);
    for (double v : cov.a)
        if (!std::isfinite(v)) throw Error("pca: non-finite covariance");
    const JacobiResult eig = jacobi_eigen(cov);
    PcaResult res;
    res.projection.kind = ProjectionKind::pca;
    res.projection.m = eig.vectors.transposed();  // rows are eigenvectors
    res.eigenvalues = eig.values;
    res.jacobi_rotations = eig.rotations;
    return res;
}

IcaResult fast_ica(const DataMatrix& d, const IcaOptions& opt) {
    if (opt.max_iter < 1) throw ValidationError("fast_ica: max_iter must be >= 1");
    const int nv = d.n_vars;
    const std::size_t n = d.n_samples;

    const SmallMat cov = covariance(d);
    const JacobiResult eig = jacobi_eigen(cov);
    const double lmax = eig.values.empty() ? 0.0 : eig.values[0];
    if (!(lmax > 0.0)) throw Error("fast_ica: degenerate (constant) data");
    SmallMat K(nv, nv);  // whitening: D^{-1/2} E^T
    for (int i = 0; i < nv; ++i) {
        const double lam = std::max(eig.values[static_cast<std::size_t>(i)], lmax * 1e-12);
        const double s = 1.0 / std::sqrt(lam);
        for (int k = 0; k < nv; ++k) K(i, k) = s * eig.vectors(k, i);
    }

    std::vector<double> z(n * static_cast<std::size_t>(nv));
    par::for_rows(static_cast<int>(n), [&](int ji) {
        const std::size_t j = static_cast<std::size_t>(ji);
        for (int i = 0; i < nv; ++i) {
            double s = 0.0;
            for (int k = 0; k < nv; ++k) s += K(i, k) * d.at(j, k);
            z[j * nv + i] = s;
        }
    });

    Rng rng(opt.seed);
    SmallMat w(nv, nv);
    for (double& v : w.a) v = rng.normal();
    w = matmul(inv_sqrt_sym(matmul(w, w.transposed())), w);

    std::vector<double> tanh_buf(n * static_cast<std::size_t>(nv));
    SmallMat best = w;
    double best_delta = std::numeric_limits<double>::infinity();
    IcaResult res;

    for (int iter = 1; iter <= opt.max_iter; ++iter) {
        par::for_rows(static_cast<int>(n), [&](int ji) {
            const std::size_t j = static_cast<std::size_t>(ji);
            for (int i = 0; i < nv; ++i) {
                double u = 0.0;
                for (int k = 0; k < nv; ++k) u += w(i, k) * z[j * nv + k];
                tanh_buf[j * nv + i] = std::tanh(u);
            }
        });

        SmallMat wn(nv, nv);
        for (int i = 0; i < nv; ++i) {
            const double beta = par::chunked_reduce(n, [&](std::size_t j) {
                                    const double t = tanh_buf[j * nv + i];
                                    return 1.0 - t * t;
                                }) /
                                static_cast<double>(n);
            for (int k = 0; k < nv; ++k) {
                const double m = par::chunked_reduce(n, [&](std::size_t j) {
                                     return z[j * nv + k] * tanh_buf[j * nv + i];
                                 }) /
                                 static_cast<double>(n);
                wn(i, k) = m - beta * w(i, k);
            }
        }
        wn = matmul(inv_sqrt_sym(matmul(wn, wn.transposed())), wn);

        double delta = 0.0;
        for (int i = 0; i < nv; ++i) {
            double dp = 0.0;
            for (int k = 0; k < nv; ++k) dp += wn(i, k) * w(i, k);
            delta = std::max(delta, std::fabs(1.0 - std::fabs(dp)));
        }
        w = wn;
        res.iterations = iter;
        if (delta < best_delta) {
            best_delta = delta;
            best = w;
        }
        if (delta < opt.tol) {
            res.converged = true;
            break;
        }
    }

    res.unmixing.kind = ProjectionKind::ica_unmixing;
    res.unmixing.m = matmul(res.converged ? w : best, K);
    return res;
}

SmallMat estimate_noise_covariance(const MultibandRaster& r) {
    if (r.width < 2) throw ValidationError("estimate_noise_covariance: width must be >= 2");
    if (r.bands > 16) throw ValidationError("estimate_noise_covariance: more than 16 bands unsupported");
    const int nv = r.bands;
    const int npair_slots = nv * nv;

    std::vector<std::vector<double>> parts(
        static_cast<std::size_t>(r.height),
        std::vector<double>(static_cast<std::size_t>(npair_slots) + 1, 0.0));
    par::for_rows(r.height, [&](int row) {
        auto& acc = parts[static_cast<std::size_t>(row)];
        for (int col = 0; col + 1 < r.width; ++col) {
            if (!r.is_valid(row, col) || !r.is_valid(row, col + 1)) continue;
            double diff[16];
            for (int b = 0; b < nv; ++b)
                diff[b] = r.at(b, row, col) - r.at(b, row, col + 1);
            for (int a = 0; a < nv; ++a)
                for (int b = 0; b < nv; ++b)
                    acc[static_cast<std::size_t>(a * nv + b)] += diff[a] * diff[b];
            acc[static_cast<std::size_t>(npair_slots)] += 1.0;
        }
    });
    const std::vector<double> total = combine_rows(parts);
    const double npairs = total[static_cast<std::size_t>(npair_slots)];
    if (npairs < 1.0) throw Error("estimate_noise_covariance: no adjacent valid pairs");

    SmallMat out(nv, nv);
    for (int a = 0; a < nv; ++a)
        for (int b = 0; b < nv; ++b)
            out(a, b) = total[static_cast<std::size_t>(a * nv + b)] / (2.0 * npairs);
    return out;
}

ComponentStack mnf(const MultibandRaster& r, MnfResult* detail) {
    if (r.bands > 16) throw ValidationError("mnf: more than 16 bands unsupported");
    const SmallMat noise = estimate_noise_covariance(r);
    const DataMatrix d = to_data_matrix(r);
    const SmallMat data_cov = covariance(d);

    double noise_trace = 0.0, data_trace = 0.0;
    for (int i = 0; i < r.bands; ++i) {
        noise_trace += noise(i, i);
        data_trace += data_cov(i, i);
    }
    // Ridge keeps the noise whitening invertible. A noise-free synthetic scene
    // has a zero noise trace, so fall back to the data trace there; then the
    // ridge is the entire (isotropic) noise model and MNF degrades to PCA.
    double ridge = 1e-10 * noise_trace;
    if (ridge == 0.0) ridge = 1e-10 * data_trace;

    SmallMat ridged = noise;
    for (int i = 0; i < r.bands; ++i) ridged(i, i) += ridge;
    const JacobiResult ne = jacobi_eigen(ridged);
    const double nmax = ne.values.front(), nmin = ne.values.back();
    const double condition = nmin > 0.0 ? nmax / nmin
                                        : std::numeric_limits<double>::infinity();
    if (!(nmin > 0.0))
        throw Error("mnf: singular noise covariance after ridge (condition " +
                    std::to_string(condition) + ")");

    SmallMat wn(r.bands, r.bands);  // noise whitening
    for (int i = 0; i < r.bands; ++i) {
        const double s = 1.0 / std::sqrt(ne.values[static_cast<std::size_t>(i)]);
        for (int k = 0; k < r.bands; ++k) wn(i, k) = s * ne.vectors(k, i);
    }

    const SmallMat whitened_cov = matmul(matmul(wn, data_cov), wn.transposed());
    const JacobiResult we = jacobi_eigen(whitened_cov);

    ProjectionMatrix proj;
    proj.kind = ProjectionKind::mnf;
    proj.m = matmul(we.vectors.transposed(), wn);
    if (detail) {
        detail->projection = proj;
        detail->snr = we.values;
        detail->noise_condition = condition;
        detail->ridge = ridge;
    }
    return transform(r, proj, we.values);
}

ComponentStack transform(const MultibandRaster& r, const ProjectionMatrix& p,
                         const std::vector<double>& scores) {
    const int nv = r.bands;
    if (nv > 16) throw ValidationError("transform: more than 16 bands unsupported");
    if (p.m.rows != nv || p.m.cols != nv)
        throw ValidationError("transform: projection is " + std::to_string(p.m.rows) + "x" +
                              std::to_string(p.m.cols) + " but raster has " +
                              std::to_string(nv) + " bands");
    if (p.kind != ProjectionKind::ica_unmixing &&
        static_cast<int>(scores.size()) != nv)
        throw ValidationError("transform: need one score per component");

    std::vector<double> mean(static_cast<std::size_t>(nv), 0.0);
    const std::size_t nvalid = r.valid_count();
    if (nvalid == 0) throw Error("transform: no valid samples");
    for (int b = 0; b < nv; ++b) {
        const double s = par::chunked_reduce(r.plane(), [&](std::size_t i) {
            return r.valid[i] ? r.samples[b * r.plane() + i] : 0.0;
        });
        mean[static_cast<std::size_t>(b)] = s / static_cast<double>(nvalid);
    }

    ComponentStack cs;
    cs.components = MultibandRaster(r.width, r.height, nv, 0.0, r.georef);
    cs.components.valid = r.valid;
    par::for_rows(r.height, [&](int row) {
        for (int col = 0; col < r.width; ++col) {
            const std::size_t pix = static_cast<std::size_t>(row) * r.width + col;
            if (!r.valid[pix]) continue;
            double centered[16];
            for (int b = 0; b < nv; ++b)
                centered[b] = r.samples[b * r.plane() + pix] - mean[static_cast<std::size_t>(b)];
            for (int i = 0; i < nv; ++i) {
                double s = 0.0;
                for (int k = 0; k < nv; ++k) s += p.m(i, k) * centered[k];
                cs.components.samples[i * r.plane() + pix] = s;
            }
        }
    });

    cs.score_kind = score_kind_for(p.kind);
    if (p.kind == ProjectionKind::ica_unmixing) {
        std::vector<double> kurt(static_cast<std::size_t>(nv), 0.0);
        for (int i = 0; i < nv; ++i) {
            const double m2 = par::chunked_reduce(r.plane(), [&](std::size_t pix) {
                                  if (!cs.components.valid[pix]) return 0.0;
                                  const double v = cs.components.samples[i * r.plane() + pix];
                                  return v * v;
                              }) /
                              static_cast<double>(nvalid);
            const double m4 = par::chunked_reduce(r.plane(), [&](std::size_t pix) {
                                  if (!cs.components.valid[pix]) return 0.0;
                                  const double v = cs.components.samples[i * r.plane() + pix];
                                  return v * v * v * v;
                              }) /
                              static_cast<double>(nvalid);
            kurt[static_cast<std::size_t>(i)] =
                m2 > 0.0 ? std::fabs(m4 / (m2 * m2) - 3.0) : 0.0;
        }
        std::vector<int> order(static_cast<std::size_t>(nv));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return kurt[static_cast<std::size_t>(a)] > kurt[static_cast<std::size_t>(b)];
        });
        MultibandRaster reordered(r.width, r.height, nv, 0.0, r.georef);
        reordered.valid = r.valid;
        cs.scores.resize(static_cast<std::size_t>(nv));
        for (int i = 0; i < nv; ++i) {
            const int src = order[static_cast<std::size_t>(i)];
            std::copy(cs.components.samples.begin() + src * r.plane(),
                      cs.components.samples.begin() + (src + 1) * r.plane(),
                      reordered.samples.begin() + i * r.plane());
            cs.scores[static_cast<std::size_t>(i)] = kurt[static_cast<std::size_t>(src)];
        }
        cs.components = std::move(reordered);
    } else {
        cs.scores = scores;
    }
    return cs;
}

GrayImage select_component(const ComponentStack& cs, std::optional<int> index) {
    const int nv = cs.components.bands;
    if (nv < 1) throw Error("select_component: empty stack");
    const int idx = index.value_or(0);
    if (idx < 0 || idx >= nv)
        throw ValidationError("select_component: component index " + std::to_string(idx) +
                              " out of range [0, " + std::to_string(nv - 1) + "]");
    return rescale_to_255(cs.components.band(idx));
}

}  // namespace linex::dimred
