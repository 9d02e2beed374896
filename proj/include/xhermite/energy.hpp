#pragma once

#include "xhermite/matrix.hpp"
#include "xhermite/mp.hpp"
#include "xhermite/poly.hpp"
#include "xhermite/zeros.hpp"

#include <vector>

namespace xh {

// The 2m+n real coordinates of a point configuration: m off-axis points
// (xi_k, eta_k) followed by n on-axis points x_i.
struct Configuration {
    std::vector<MpReal> xi, eta, x;

    int m() const { return static_cast<int>(xi.size()); }
    int n() const { return static_cast<int>(x.size()); }
    MpComplex z(int k) const { return {xi[k], eta[k]}; }
};

Configuration configuration_from(const ZeroSet& zs);

// Dense symmetric matrix in the block order m twos then n ones, plus the
// diagonal scaling parameter of the similarity D = diag(1,...,1,K,...,K).
struct PartitionedHessian {
    int m = 0, n = 0;
    Mat entries;
    double K = 1.0;

    int dim() const { return 2 * m + n; }
};

// F: sum of log-weights at every point plus pairwise log-distance terms,
// all in the log domain. The weight is |e^{-z^2}| / |H(z)|^2 with H given by
// its roots and exact leading coefficient.
MpReal log_energy(const Configuration& cfg, const HRoots& hw);

// F_c = -sum u^2 - 2 sum log H(u) + 2 sum_{p<q} log(u_p - u_q), principal
// branches, points ordered off-axis first. Re F_c equals log_energy up to
// rounding.
MpComplex complex_log_energy(const Configuration& cfg, const ExactPoly& H);

// Analytic partials of F in the coordinate order (xi_1, eta_1, ..., x_n).
std::vector<MpReal> gradient(const Configuration& cfg, const HRoots& hw);

// Closed-form second partials of F at a classified zero set, rounded to
// double after arbitrary-precision assembly. The 2x2 off-axis diagonal
// blocks are [[a, b], [b, -a]] (harmonicity), so their trace is exactly 0.
PartitionedHessian hessian(const ZeroSet& zs, const HRoots& hw);

// Similarity D^-1 H D: off-axis-row x on-axis-column entries multiplied by
// K, on-axis-row x off-axis-column entries divided by K. Eigenvalues are
// unchanged; the result is no longer symmetric for K != 1.
PartitionedHessian scaled_hessian(const PartitionedHessian& h, double K);

// Undo the similarity: recover the symmetric K=1 matrix.
PartitionedHessian unscaled(const PartitionedHessian& h);

struct ScalingSearch {
    bool found = false;
    double K = 1.0;
    std::vector<double> margins; // per block row, for the found K
    // closed-form feasibility window (margins are monotone in K):
    // dominance holds iff K_low < K < K_high; empty window when K_low >= K_high
    double K_low = 0.0, K_high = 0.0;
    bool window_valid = false;
};

// Two-stage search for a scaling that makes the similarity strictly block
// diagonally dominant: powers of two 2^t, |t| <= 20, smallest |t| first;
// then the geometric midpoint of the closed-form feasibility window. A
// NoneFound outcome is reported via found=false, never thrown.
ScalingSearch find_scaling_K(const PartitionedHessian& h);

} // namespace xh
