#pragma once

#include "xhermite/matrix.hpp"
#include "xhermite/mp.hpp"
#include "xhermite/partition.hpp"
#include "xhermite/poly.hpp"
#include "xhermite/zeros.hpp"

#include <cstdint>
#include <vector>

namespace xh {

enum class WeightKind { classical_hermite, exceptional, modified_w1 };

// A weight on the real line in one of three shapes:
//   classical_hermite  e^{-x^2}
//   exceptional        e^{-x^2} / denom(x)^2
//   modified_w1        e^{-x^2} * |P_off(x)|^2 / denom(x)^2
// where P_off is the monic polynomial with the conjugate-paired off-axis
// zero list as roots (real coefficients, so the weight is real).
struct WeightSpec {
    WeightKind kind = WeightKind::classical_hermite;
    Partition lambda;
    int n = 0;
    std::vector<MpComplex> exceptional_zeros; // modified_w1 only
    HRoots hw;                                // denominator roots (non-classical kinds)

    static WeightSpec classical();
    static WeightSpec exceptional_w(const Partition& lambda, int n, HRoots hw);
    static WeightSpec modified(const Partition& lambda, int n, HRoots hw,
                               std::vector<MpComplex> zeros);
};

// log w and its first two derivatives at a real point, combined over
// conjugate pairs so everything is real.
MpReal log_weight_value(const WeightSpec& ws, const MpReal& x);
MpReal log_weight_slope(const WeightSpec& ws, const MpReal& x);  // M = (log w)'
MpReal log_weight_curv(const WeightSpec& ws, const MpReal& x);   // M' = (log w)''

struct ApproximatingVerdict {
    bool convex_ok = false;    // -M' >= 0 on the grid
    bool moments_ok = false;   // tail decay of w * x^k at |x| = 10, 20, 40
    bool boundary_skipped = true; // vacuous on the whole real line
    double min_neg_curv = 0;   // min over grid of -M'
    bool approximating() const { return convex_ok && moments_ok; }
};

// Definition check on a uniform grid over [lo, hi] (grid_size >= 100).
ApproximatingVerdict is_approximating(const WeightSpec& ws, double lo, double hi, int grid_size);

// M'(x) for the modified weight via the pair-difference form
//   -2 - 2 sum_k (1/(x-z_k)^2 - 1/(x-w_k)^2), real-combined.
MpReal m1n_derivative(const WeightSpec& ws, const MpReal& x);

// h_ij = 2/(x_i-x_j)^2 off-diagonal, h_ii = (log w)''(x_i) - sum_j 2/(x_i-x_j)^2.
Mat reduced_hessian(const std::vector<MpReal>& x, const WeightSpec& ws);

// Energy of an on-axis configuration under the weight:
//   sum_i log w(y_i) + sum_{i<j} log (y_i - y_j)^2.
MpReal reduced_log_energy(const std::vector<MpReal>& y, const WeightSpec& ws);

std::vector<MpReal> reduced_gradient(const std::vector<MpReal>& y, const WeightSpec& ws);

struct MaximumVerdict {
    double stationarity_max = 0;
    double hessian_max_eigenvalue = 0;
    int trials = 0;
    int failures = 0; // perturbations that did not strictly decrease energy
    std::uint64_t seed = 0;
    bool passed() const {
        return stationarity_max <= 1e-8 && hessian_max_eigenvalue < 0 && failures == 0;
    }
};

// Stationarity, definiteness, and seeded random perturbation dominance at a
// candidate maximizer (Gaussian displacements, log-spaced scales 1e-3..1e-1;
// scale_override >= 0 fixes every trial's scale instead, with strictness
// waived when the displacement is identically zero).
MaximumVerdict verify_unique_maximum(const WeightSpec& ws, const std::vector<MpReal>& x,
                                     int trials, std::uint64_t seed,
                                     double scale_override = -1.0);

// Residual of the on-axis factor's second-order equation at a real point,
// normalized by the largest participating term. q is the monic polynomial
// with roots zs.regular; the off-axis factor and the denominator enter
// through their log-derivative sums.
MpReal qn_ode_residual(const Partition& lambda, int n, const MpReal& x, const ZeroSet& zs,
                       const HRoots& hw, unsigned precision_bits);

} // namespace xh
