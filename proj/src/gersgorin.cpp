#include "xhermite/gersgorin.hpp"

#include "xhermite/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace xh {

BlockPartition hessian_partition(int m, int n) {
    BlockPartition pi;
    for (int k = 0; k < m; ++k) pi.sizes.push_back(2);
    for (int i = 0; i < n; ++i) pi.sizes.push_back(1);
    return pi;
}

Mat block_norms(const Mat& a, const BlockPartition& pi) {
    if (pi.sizes.empty() || pi.dim() != a.rows || a.rows != a.cols)
        throw PartitionMismatch("partition sizes do not sum to the matrix dimension");
    const int nb = pi.block_count();
    Mat out(nb, nb);
    for (int bi = 0; bi < nb; ++bi) {
        const int ri = pi.offset(bi);
        for (int bj = 0; bj < nb; ++bj) {
            const int cj = pi.offset(bj);
            double best = 0;
            for (int r = 0; r < pi.sizes[bi]; ++r) {
                double row = 0;
                for (int c = 0; c < pi.sizes[bj]; ++c) row += std::fabs(a(ri + r, cj + c));
                best = std::max(best, row);
            }
            out(bi, bj) = best;
        }
    }
    return out;
}

namespace {

// explicit inverse by Gauss-Jordan with partial pivoting; throws on
// (numerical) singularity
Mat gauss_inverse(Mat a) {
    const int n = a.rows;
    Mat inv(n, n);
    for (int i = 0; i < n; ++i) inv(i, i) = 1;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
        if (a(piv, col) == 0) throw SingularBlock("diagonal block is singular");
        if (piv != col)
            for (int c = 0; c < n; ++c) {
                std::swap(a(piv, c), a(col, c));
                std::swap(inv(piv, c), inv(col, c));
            }
        const double d = a(col, col);
        for (int c = 0; c < n; ++c) {
            a(col, c) /= d;
            inv(col, c) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0) continue;
            for (int c = 0; c < n; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

double inf_norm(const Mat& m) {
    double best = 0;
    for (int r = 0; r < m.rows; ++r) {
        double row = 0;
        for (int c = 0; c < m.cols; ++c) row += std::fabs(m(r, c));
        best = std::max(best, row);
    }
    return best;
}

} // namespace

double inv_block_norm_reciprocal(const Mat& b) {
    if (b.rows != b.cols) throw PartitionMismatch("block is not square");
    if (b.rows == 1) {
        if (b(0, 0) == 0) throw SingularBlock("scalar block is zero");
        return std::fabs(b(0, 0));
    }
    if (b.rows == 2) {
        const double a = b(0, 0), bb = b(0, 1), c = b(1, 0), d = b(1, 1);
        const double det = a * d - bb * c;
        if (det == 0) throw SingularBlock("2x2 block is singular");
        if (d == -a && bb == c) // trace-zero symmetric: (a^2+b^2)/(|a|+|b|)
            return (a * a + bb * bb) / (std::fabs(a) + std::fabs(bb));
        // adjugate rows give ||B^-1||_inf = max(|d|+|b|, |c|+|a|)/|det|
        const double num = std::max(std::fabs(d) + std::fabs(bb), std::fabs(c) + std::fabs(a));
        return std::fabs(det) / num;
    }
    const double nrm = inf_norm(gauss_inverse(b));
    if (nrm == 0) throw SingularBlock("inverse norm is zero");
    return 1.0 / nrm;
}

DominanceVerdict is_strictly_block_diagonally_dominant(const Mat& a, const BlockPartition& pi) {
    const Mat norms = block_norms(a, pi);
    const int nb = pi.block_count();
    DominanceVerdict v;
    v.dominant = true;
    for (int bi = 0; bi < nb; ++bi) {
        const int off = pi.offset(bi);
        Mat diag(pi.sizes[bi], pi.sizes[bi]);
        for (int r = 0; r < diag.rows; ++r)
            for (int c = 0; c < diag.cols; ++c) diag(r, c) = a(off + r, off + c);
        double recr;
        try {
            recr = inv_block_norm_reciprocal(diag);
        } catch (const SingularBlock&) {
            v.margins.push_back(-std::numeric_limits<double>::infinity());
            v.dominant = false;
            continue;
        }
        double off_sum = 0;
        for (int bj = 0; bj < nb; ++bj)
            if (bj != bi) off_sum += norms(bi, bj);
        const double margin = recr - off_sum;
        v.margins.push_back(margin);
        if (!(margin > 0)) v.dominant = false;
    }
    return v;
}

GersgorinReport gersgorin_sets(const PartitionedHessian& h) {
    const int m = h.m, n = h.n;
    if (h.entries.rows != 2 * m + n || h.entries.cols != 2 * m + n)
        throw BlockShapeMismatch("matrix does not match the 2m+n layout");
    const Mat& a = h.entries;
    for (int k = 0; k < m; ++k)
        if (a(2 * k, 2 * k) != -a(2 * k + 1, 2 * k + 1))
            throw BlockShapeMismatch("2x2 diagonal block is not trace-zero");

    const BlockPartition pi = hessian_partition(m, n);
    const Mat norms = block_norms(a, pi);
    GersgorinReport rep;

    for (int k = 0; k < m; ++k) {
        const double av = a(2 * k, 2 * k), bv = a(2 * k, 2 * k + 1);
        const double U2 = av * av + bv * bv;
        const double U = std::sqrt(U2);
        const double V = std::fabs(av) + std::fabs(bv);
        double R = 0;
        for (int bj = 0; bj < pi.block_count(); ++bj)
            if (bj != k) R += norms(k, bj);
        rep.U.push_back(U);
        rep.V.push_back(V);
        rep.R.push_back(R);
        const double hi = std::sqrt(R * V + U2 + R * R / 4) + R / 2;
        const double inner = std::max(U2 - R * V + R * R / 4, 0.0);
        const double lo = std::max(std::sqrt(inner) - R / 2, 0.0);
        std::vector<Interval> bands;
        bands.push_back({-hi, -lo});
        bands.push_back({lo, hi});
        rep.g_e.push_back(std::move(bands));
    }
    for (int i = 0; i < n; ++i) {
        const int bi = m + i;
        const double center = a(2 * m + i, 2 * m + i);
        double R = 0;
        for (int bj = 0; bj < pi.block_count(); ++bj)
            if (bj != bi) R += norms(bi, bj);
        rep.g_r.push_back({center - R, center + R});
    }
    return rep;
}

GersgorinReport localization_report(const PartitionedHessian& h) {
    GersgorinReport rep = gersgorin_sets(h);
    rep.dominance =
        is_strictly_block_diagonally_dominant(h.entries, hessian_partition(h.m, h.n));
    rep.eigenvalues = symmetric_eigenvalues(unscaled(h).entries);

    std::vector<Interval> flat;
    for (const auto& bands : rep.g_e) flat.insert(flat.end(), bands.begin(), bands.end());
    flat.insert(flat.end(), rep.g_r.begin(), rep.g_r.end());
    rep.all_contained = true;
    for (const double ev : rep.eigenvalues) {
        int where = -1;
        for (size_t c = 0; c < flat.size(); ++c)
            if (flat[c].contains(ev)) {
                where = static_cast<int>(c);
                break;
            }
        rep.containment.push_back(where);
        if (where < 0) rep.all_contained = false;
    }
    rep.g_r_negative = !rep.g_r.empty();
    for (const auto& iv : rep.g_r)
        if (iv.hi >= 0) rep.g_r_negative = false;
    return rep;
}

} // namespace xh
