#pragma once

#include "xhermite/energy.hpp"
#include "xhermite/mp.hpp"
#include "xhermite/pipeline.hpp"
#include "xhermite/poly.hpp"

#include <utility>
#include <vector>

namespace xh {

// The Wronskian-type denominator of the (nu, nu) case in its two guises:
// exact integer polynomial D_nu = H_nu * H_{nu+1}' - H_nu' * H_{nu+1}, and
// the orthonormal-scale factor linking it to the Christoffel–Darboux sum.
// scale = 1 / sqrt(pi * radicand); the radicand 2^(2nu+1) nu! (nu+1)! is kept
// exact so identities can be cleared of all roots symbolically.
struct DnuPoly {
    ExactPoly exact_part;
    int nu = 0;
    BigInt scale_radicand = 1;

    MpReal scale(unsigned precision_bits) const;
    // d_nu(x) = scale * exact_part(x)
    MpReal value(const MpReal& x, unsigned precision_bits) const;
};

// Construct D_nu and verify, at construction time, that (a) it matches the
// two-row Wronskian construction of the partition (nu, nu) up to a constant
// positive rational factor, and (b) the determinant form agrees with the
// Christoffel–Darboux sum (gamma ratio x sum of squared orthonormal values)
// to 1e-10 relative on a (2nu+5)-point grid.
DnuPoly dnu(int nu);

// Exact polynomial identity, cleared of orthonormal scales:
//   H_nu D'' - (2x H_nu + 2 H_nu') D' + 4x H_nu' D == 0.
bool dnu_ode_check(int nu);

// Exact cleared forms of the two product rewrites the curvature candidate
// rests on: 2x H_nu H_{nu+1} == 2(nu+1) H_nu^2 + H_{nu+1}^2 - D_nu and
// H_nu' H_{nu+1} == 2(nu+1) H_nu^2 - D_nu.
std::pair<bool, bool> product_identities_check(int nu);

// The displayed curvature candidate
//   r(z) = -(8(z^2 + 1 - sqrt((nu+1)/2) (2 h_nu^2 + h_{nu+1}^2)/d_nu) + 2n),
// evaluated through the cleared equivalent
//   -8z^2 - 8 - 2n + (16(nu+1) H_nu(z)^2 + 4 H_{nu+1}(z)^2) / D_nu(z).
MpComplex r_mn(int nu, int n, const MpComplex& z, unsigned precision_bits);

// Independent closed form for the true off-axis diagonal curvature at a
// simple zero z_k of P: the pair sum over the remaining zeros is evaluated
// from the polynomial itself via
//   sum_{zeta != z_k} 1/(z_k - zeta)^2 = c1^2 - 2 c2,
//   c1 = P''/(2P'),  c2 = P'''/(6P')   (all at z_k),
// giving C = -2 + 2 sum_l 1/(z_k - w_l)^2 - 2 (c1^2 - 2 c2).
MpComplex exceptional_curvature(const ExactPoly& p, const HRoots& hw, const MpComplex& zk,
                                unsigned precision_bits);

struct SaddleVerdict {
    bool dominant = false;        // (i) strict block dominance at a found K
    bool on_axis_negative = false;  // (ii) every 1x1 diagonal entry < 0
    bool off_axis_negative = false; // (iii) every 2x2 block has a < 0
    ScalingSearch scaling;
    double min_on_axis_margin = 0;  // most positive 1x1 diagonal entry, negated
    double min_off_axis_margin = 0; // smallest |a| over 2x2 blocks
};
SaddleVerdict saddle_check(const CaseData& cs);
// Convenience form: builds the (nu, nu) case at the given precision first.
SaddleVerdict saddle_check(int nu, int n, unsigned precision_bits = 192);

struct CrossValidation {
    // per 2x2 block: assembled (a, b) vs (Re r, Im r) at z_k and the
    // relative deviations, plus the independent curvature closed form
    std::vector<double> assembled_a, assembled_b;
    std::vector<double> displayed_re, displayed_im;
    std::vector<double> rel_dev_re, rel_dev_im;
    std::vector<double> curvature_re, curvature_im;
    std::vector<double> curvature_rel_dev; // |C - (a - i b)| / |C|
    double max_rel_dev = 0;       // displayed vs assembled
    double max_curvature_dev = 0; // closed form vs assembled
};
// Compare the three routes to the off-axis diagonal blocks: energy-engine
// assembly, the displayed r formula, and the polynomial curvature closed
// form. Deviations are reported, never patched.
CrossValidation hessian_cross_check(const CaseData& cs, const PartitionedHessian& h);

struct DistanceFit {
    std::vector<int> n_values;
    std::vector<double> min_dist, max_dist;
    double slope = 0;          // log max_dist vs log n
    double min_scaled_c = 0;   // min over grid of min_dist * sqrt(n) * log n
    bool fit_valid = false;
};
DistanceFit distance_bound_fit(int nu, const std::vector<int>& n_grid, unsigned precision_bits);

} // namespace xh
