#pragma once

#include "xhermite/energy.hpp"
#include "xhermite/matrix.hpp"

#include <utility>
#include <vector>

namespace xh {

// Conformal partition of a square matrix into consecutive diagonal blocks.
struct BlockPartition {
    std::vector<int> sizes;

    int block_count() const { return static_cast<int>(sizes.size()); }
    int dim() const {
        int s = 0;
        for (int v : sizes) s += v;
        return s;
    }
    int offset(int block) const {
        int s = 0;
        for (int b = 0; b < block; ++b) s += sizes[b];
        return s;
    }
};

// m 2x2 blocks followed by n 1x1 blocks.
BlockPartition hessian_partition(int m, int n);

// (I,J) entry: max over rows of block I of the absolute row sum restricted
// to the columns of block J (the l-infinity operator norm of the sub-block).
Mat block_norms(const Mat& a, const BlockPartition& pi);

// (||B^-1||_inf)^-1. Closed forms for 1x1 and 2x2 blocks, adjugate-based
// for the general 2x2; larger blocks via explicit Gaussian inverse.
double inv_block_norm_reciprocal(const Mat& b);

struct DominanceVerdict {
    bool dominant = false;
    std::vector<double> margins; // (||A_II^-1||)^-1 - sum_{J!=I} ||A_IJ||
};

// Strict block diagonal dominance in the l-infinity family; a singular
// diagonal block yields a false verdict with a -inf margin rather than an
// exception.
DominanceVerdict is_strictly_block_diagonally_dominant(const Mat& a, const BlockPartition& pi);

struct Interval {
    double lo = 0, hi = 0;
    bool contains(double x) const { return x >= lo && x <= hi; }
};

struct GersgorinReport {
    std::vector<Interval> g_r;              // one interval per on-axis row
    std::vector<std::vector<Interval>> g_e; // symmetric bands per 2x2 block
    std::vector<double> U, V, R;            // per 2x2 block
    std::vector<double> eigenvalues;        // of the similar symmetric matrix
    // component index per eigenvalue: 0-based into the flattened list of
    // g_e intervals then g_r intervals; -1 if uncontained
    std::vector<int> containment;
    bool all_contained = false;
    bool g_r_negative = false; // union of g_r lies in (-inf, 0)
    DominanceVerdict dominance;
};

// Inclusion sets only (no eigenvalues): real Gersgorin intervals for the 1x1
// rows; for each trace-zero 2x2 block, the symmetric bands
// +-[max(sqrt(max(U^2-RV+R^2/4,0))-R/2, 0), sqrt(RV+U^2+R^2/4)+R/2]
// with U = sqrt(a^2+b^2), V = |a|+|b|, R the off-block row sum.
GersgorinReport gersgorin_sets(const PartitionedHessian& h);

// Completes the report: eigenvalues (computed from the symmetric K=1
// matrix, which the scaled one is similar to), per-eigenvalue containment,
// and the sign verdict on the on-axis intervals.
GersgorinReport localization_report(const PartitionedHessian& h);

} // namespace xh
