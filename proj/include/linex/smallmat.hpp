#pragma once

#include <cstddef>
#include <vector>

#include "linex/common.hpp"

namespace linex {

// Dense row-major matrix for band-space work. Band counts stay in single
// digits here, so there is no point pulling in a linear algebra library for
// these few kernels.
struct SmallMat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    SmallMat() = default;
    SmallMat(int r, int c, double fill = 0.0)
        : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}

    double& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    static SmallMat identity(int n);
    SmallMat transposed() const;
};

SmallMat matmul(const SmallMat& x, const SmallMat& y);

struct JacobiResult {
    SmallMat vectors;            // eigenvectors in columns, matching values
    std::vector<double> values;  // descending
    int rotations = 0;
};

// Cyclic Jacobi for symmetric matrices. Sweeps all off-diagonal pairs until
// the off-diagonal Frobenius norm drops below 1e-12 times the sum of |diag|,
// or max_sweeps is hit. Each eigenvector is scaled so its largest-magnitude
// entry is positive.
JacobiResult jacobi_eigen(const SmallMat& a, int max_sweeps = 100);

// Symmetric inverse square root via jacobi_eigen. Eigenvalues clamped at a
// tiny floor so near-singular inputs do not blow up.
SmallMat inv_sqrt_sym(const SmallMat& a);

}  // namespace linex
