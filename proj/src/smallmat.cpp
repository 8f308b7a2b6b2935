#include "linex/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace linex {

SmallMat SmallMat::identity(int n) {
    SmallMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

SmallMat SmallMat::transposed() const {
    SmallMat t(cols, rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) t(c, r) = (*this)(r, c);
    return t;
}

SmallMat matmul(const SmallMat& x, const SmallMat& y) {
    if (x.cols != y.rows) throw Error("matmul: shape mismatch");
    SmallMat out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const double v = x(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) out(i, j) += v * y(k, j);
        }
    return out;
}

static double offdiag_frob(const SmallMat& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (i != j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

JacobiResult jacobi_eigen(const SmallMat& a, int max_sweeps) {
    if (a.rows != a.cols) throw Error("jacobi_eigen: matrix not square");
    const int n = a.rows;
    SmallMat m = a;
    SmallMat v = SmallMat::identity(n);
    JacobiResult res;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double diag_sum = 0.0;
        for (int i = 0; i < n; ++i) diag_sum += std::fabs(m(i, i));
        if (offdiag_frob(m) <= 1e-12 * diag_sum) break;

        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (apq == 0.0) continue;
                const double app = m(p, p), aqq = m(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                // smaller-angle root of t^2 + 2*theta*t - 1 = 0
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (int k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
                ++res.rotations;
            }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return m(i, i) > m(j, j); });

    res.values.resize(n);
    res.vectors = SmallMat(n, n);
    for (int c = 0; c < n; ++c) {
        const int src = order[c];
        res.values[c] = m(src, src);
        int big = 0;
        for (int r = 1; r < n; ++r)
            if (std::fabs(v(r, src)) > std::fabs(v(big, src))) big = r;
        const double sign = v(big, src) < 0.0 ? -1.0 : 1.0;
        for (int r = 0; r < n; ++r) res.vectors(r, c) = sign * v(r, src);
    }
    return res;
}

SmallMat inv_sqrt_sym(const SmallMat& a) {
    JacobiResult e = jacobi_eigen(a);
    const int n = a.rows;
    double biggest = 0.0;
    for (double v : e.values) biggest = std::max(biggest, std::fabs(v));
    const double floor_val = std::max(biggest, 1.0) * 1e-300;
    SmallMat d(n, n);
    for (int i = 0; i < n; ++i)
        d(i, i) = 1.0 / std::sqrt(std::max(e.values[i], floor_val));
    return matmul(matmul(e.vectors, d), e.vectors.transposed());
}

}  // namespace linex
