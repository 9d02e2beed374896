#pragma once

#include <cstddef>
#include <vector>

namespace xh {

// Dense row-major double matrix; small sizes only (a few hundred rows).
struct Mat {
    int rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

double frobenius_norm(const Mat& m);
double max_abs(const Mat& m);

// Eigenvalues of a symmetric matrix by the cyclic Jacobi rotation method,
// ascending. Symmetry is checked up to 1e-12 relative to the largest entry
// (NotSymmetric otherwise); sweeps run until the off-diagonal Frobenius norm
// falls below 1e-13 times the norm of the input.
std::vector<double> symmetric_eigenvalues(Mat m);

} // namespace xh
