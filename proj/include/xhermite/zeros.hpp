#pragma once

#include "xhermite/mp.hpp"
#include "xhermite/partition.hpp"
#include "xhermite/poly.hpp"

#include <vector>

namespace xh {

// All roots of a denominator polynomial, conjugate-paired, plus the exact
// leading coefficient (needed to evaluate log|H| and the complex energy with
// a consistent constant).
struct HRoots {
    std::vector<MpComplex> roots;
    std::vector<MpReal> residual; // |p(z)| / (|p'(z)| * nearest-root spacing)
    BigInt lead = 1;
};

// Classified zeros of a degree-(m+n) member: m non-real (conjugate pairs,
// positive imaginary part first within each pair) and n real, increasing.
struct ZeroSet {
    std::vector<MpComplex> exceptional;
    std::vector<MpReal> regular;
    Partition lambda_ref;
    int degree = 0;
};

// The N real zeros of the classical degree-N polynomial: double-precision
// seeds from the symmetric tridiagonal Jacobi matrix (diagonal 0,
// off-diagonal sqrt(k/2)), refined by Newton on the exact polynomial at the
// requested precision, then symmetrized about 0.
std::vector<MpReal> classical_hermite_zeros(int N, unsigned precision_bits);

// All deg(p) roots by Aberth–Ehrlich simultaneous iteration with Newton
// polish; conjugate symmetry is enforced by averaging matched pair members.
// Internal working precision adds a cancellation guard on top of
// precision_bits; results are accurate to roughly 2^-precision_bits.
HRoots all_roots(const ExactPoly& p, unsigned precision_bits,
                 std::vector<MpComplex> seeds = {});

// Split roots into regular (|Im| <= tol_imag * max(1,|root|), snapped to the
// real axis) and exceptional; counts must come out exactly (n, |lambda|).
ZeroSet classify_zeros(const std::vector<MpComplex>& roots, const Partition& lambda, int n,
                       const MpReal& tol_imag);

// Default classification tolerance for a given working precision.
MpReal default_tol_imag(unsigned precision_bits);

// Nearest-neighbour matching of exceptional zeros to the denominator's roots.
// matched[k] is the index into zs.exceptional assigned to hw.roots[k].
struct DeviationReport {
    std::vector<int> matched;
    std::vector<MpReal> distance; // |z_{matched[k]} - w_k|
    MpReal max_distance, min_distance;
};
DeviationReport exceptional_deviation(const ZeroSet& zs, const HRoots& hw);

// Residual of the exact relation tying each denominator root w_k to the
// matched zero z_k and the rest of the configuration:
//   1/(w_k - z_k) = w_k + sum_{l!=k} 1/(w_k-w_l) - sum_{l!=k} 1/(w_k-z_l)
//                 - sum_j 1/(w_k-x_j).
struct IdentityResidual {
    std::vector<MpComplex> absolute;
    std::vector<MpReal> relative; // |residual| * |w_k - z_k|
};
IdentityResidual km_identity_residual(const ZeroSet& zs, const HRoots& hw,
                                      unsigned precision_bits);

// Number of consecutive-gap intervals (c_k, c_{k+1}) of the classical zero
// list (total-degree classical polynomial) that contain at least one regular
// zero. r is the slack the caller's bound count >= n - r allows; it is
// validated here and recorded by callers, not used in the count.
int interlacing_report(const std::vector<MpReal>& regular, const std::vector<MpReal>& classical,
                       int r);

// sum_i 1/((a-x_i)^2 + b^2)
MpReal inverse_distance_scan(const MpReal& a, const MpReal& b,
                             const std::vector<MpReal>& regular);

} // namespace xh
