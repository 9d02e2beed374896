#include "xhermite/energy.hpp"

#include "xhermite/errors.hpp"
#include "xhermite/gersgorin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace xh {

namespace {

constexpr double kCollisionFloor = 1e-100;

// Evaluations inherit the precision the zeros were computed at; fresh
// temporaries must not degrade it.
unsigned ambient_bits(const Configuration& cfg) {
    unsigned bits = 128;
    for (const auto& v : cfg.xi) bits = std::max(bits, precision_bits_of(v));
    for (const auto& v : cfg.x) bits = std::max(bits, precision_bits_of(v));
    return bits;
}

void check_no_collisions(const Configuration& cfg, const HRoots& hw) {
    std::vector<MpComplex> pts;
    for (int k = 0; k < cfg.m(); ++k) pts.push_back(cfg.z(k));
    for (const auto& x : cfg.x) pts.push_back(MpComplex(x, MpReal(0)));
    for (size_t p = 0; p < pts.size(); ++p) {
        for (size_t q = p + 1; q < pts.size(); ++q)
            if (abs(pts[p] - pts[q]) < kCollisionFloor)
                throw CoincidentPoints("two configuration points coincide");
        for (const auto& w : hw.roots)
            if (abs(pts[p] - w) < kCollisionFloor)
                throw PointAtPoleOfW("configuration point sits on a weight pole");
    }
}

// log w(z) = Re(-z^2) - 2 log|H(z)|, with log|H| expanded over the roots so
// everything stays in the log domain.
MpReal log_weight(const MpComplex& z, const HRoots& hw) {
    MpReal v = -(z.re * z.re - z.im * z.im);
    MpReal lh = log(abs(MpReal(hw.lead)));
    for (const auto& w : hw.roots) lh += log(abs(z - w));
    return v - 2 * lh;
}

} // namespace

Configuration configuration_from(const ZeroSet& zs) {
    Configuration cfg;
    for (const auto& z : zs.exceptional) {
        cfg.xi.push_back(z.re);
        cfg.eta.push_back(z.im);
    }
    cfg.x = zs.regular;
    return cfg;
}

MpReal log_energy(const Configuration& cfg, const HRoots& hw) {
    ScopedPrecision guard(ambient_bits(cfg));
    check_no_collisions(cfg, hw);
    const int m = cfg.m(), n = cfg.n();
    MpReal f = 0;
    for (int k = 0; k < m; ++k) f += log_weight(cfg.z(k), hw);
    for (int i = 0; i < n; ++i) f += log_weight(MpComplex(cfg.x[i], MpReal(0)), hw);
    for (int k = 0; k < m; ++k)
        for (int l = k + 1; l < m; ++l) f += 2 * log(abs(cfg.z(k) - cfg.z(l)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) f += 2 * log(abs(cfg.x[i] - cfg.x[j]));
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < n; ++i)
            f += 2 * log(abs(MpComplex(cfg.x[i], MpReal(0)) - cfg.z(k)));
    return f;
}

MpComplex complex_log_energy(const Configuration& cfg, const ExactPoly& H) {
    const unsigned bits = ambient_bits(cfg);
    ScopedPrecision guard(bits);
    const int m = cfg.m(), n = cfg.n();
    std::vector<MpComplex> u;
    for (int k = 0; k < m; ++k) u.push_back(cfg.z(k));
    for (int i = 0; i < n; ++i) u.push_back(MpComplex(cfg.x[i], MpReal(0)));
    MpComplex f(MpReal(0), MpReal(0));
    for (const auto& up : u) {
        f = f - up * up;
        const EvalResult hv = eval_extended(H, up, bits);
        if (abs(hv.value) < kCollisionFloor)
            throw PointAtPoleOfW("configuration point sits on a weight pole");
        f = f - log(hv.value) * MpReal(2);
    }
    for (size_t p = 0; p < u.size(); ++p)
        for (size_t q = p + 1; q < u.size(); ++q) {
            if (abs(u[p] - u[q]) < kCollisionFloor)
                throw CoincidentPoints("two configuration points coincide");
            f = f + log(u[p] - u[q]) * MpReal(2);
        }
    return f;
}

std::vector<MpReal> gradient(const Configuration& cfg, const HRoots& hw) {
    ScopedPrecision guard(ambient_bits(cfg));
    check_no_collisions(cfg, hw);
    const int m = cfg.m(), n = cfg.n();
    std::vector<MpReal> g(2 * m + n);
    for (int k = 0; k < m; ++k) {
        const MpComplex zk = cfg.z(k);
        MpComplex s = -(zk * MpReal(2));
        for (const auto& w : hw.roots) s = s - inv(zk - w) * MpReal(2);
        for (int l = 0; l < m; ++l)
            if (l != k) s = s + inv(zk - cfg.z(l)) * MpReal(2);
        for (int i = 0; i < n; ++i) s = s + inv(zk - MpComplex(cfg.x[i], MpReal(0))) * MpReal(2);
        g[2 * k] = s.re;      // d/d xi_k of Re
        g[2 * k + 1] = -s.im; // d/d eta_k of Re
    }
    for (int i = 0; i < n; ++i) {
        const MpComplex xi(cfg.x[i], MpReal(0));
        MpReal s = -2 * cfg.x[i];
        for (const auto& w : hw.roots) s -= 2 * inv(xi - w).re;
        for (int k = 0; k < m; ++k) s += 2 * inv(xi - cfg.z(k)).re;
        for (int j = 0; j < n; ++j)
            if (j != i) s += 2 / (cfg.x[i] - cfg.x[j]);
        g[2 * m + i] = s;
    }
    return g;
}

namespace {

MpComplex inv_sq(const MpComplex& d) {
    const MpComplex r = inv(d);
    return r * r;
}

} // namespace

PartitionedHessian hessian(const ZeroSet& zs, const HRoots& hw) {
    const int m = static_cast<int>(zs.exceptional.size());
    const int n = static_cast<int>(zs.regular.size());
    for (const auto& z : zs.exceptional)
        if (z.im == 0)
            throw RealExceptionalZero("off-axis block formulas degenerate at a real zero");

    PartitionedHessian h;
    h.m = m;
    h.n = n;
    h.K = 1.0;
    h.entries = Mat(2 * m + n, 2 * m + n);
    Mat& a = h.entries;

    // off-axis 2x2 diagonal blocks from the holomorphic second derivative
    for (int k = 0; k < m; ++k) {
        const MpComplex zk = zs.exceptional[k];
        MpComplex c(MpReal(-2), MpReal(0));
        for (const auto& w : hw.roots) c = c + inv_sq(zk - w) * MpReal(2);
        for (int l = 0; l < m; ++l)
            if (l != k) c = c - inv_sq(zk - zs.exceptional[l]) * MpReal(2);
        for (const auto& x : zs.regular) c = c - inv_sq(zk - MpComplex(x, MpReal(0))) * MpReal(2);
        const double av = to_double(c.re), bv = to_double(-c.im);
        a(2 * k, 2 * k) = av;
        a(2 * k, 2 * k + 1) = bv;
        a(2 * k + 1, 2 * k) = bv;
        a(2 * k + 1, 2 * k + 1) = -av; // exact negation of the stored double
    }
    // off-axis x off-axis coupling
    for (int k = 0; k < m; ++k)
        for (int l = k + 1; l < m; ++l) {
            const MpComplex o = inv_sq(zs.exceptional[k] - zs.exceptional[l]) * MpReal(2);
            const double re = to_double(o.re), im = to_double(o.im);
            a(2 * k, 2 * l) = re;
            a(2 * k, 2 * l + 1) = -im;
            a(2 * k + 1, 2 * l) = -im;
            a(2 * k + 1, 2 * l + 1) = -re;
            a(2 * l, 2 * k) = re;
            a(2 * l, 2 * k + 1) = -im;
            a(2 * l + 1, 2 * k) = -im;
            a(2 * l + 1, 2 * k + 1) = -re;
        }
    // off-axis x on-axis coupling
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < n; ++i) {
            const MpComplex o = inv_sq(zs.exceptional[k] - MpComplex(zs.regular[i], MpReal(0))) *
                                MpReal(2);
            const double re = to_double(o.re), im = to_double(o.im);
            a(2 * k, 2 * m + i) = re;
            a(2 * k + 1, 2 * m + i) = -im;
            a(2 * m + i, 2 * k) = re;
            a(2 * m + i, 2 * k + 1) = -im;
        }
    // on-axis rows
    for (int i = 0; i < n; ++i) {
        const MpComplex xi(zs.regular[i], MpReal(0));
        MpReal d = -2;
        for (const auto& w : hw.roots) d += 2 * inv_sq(xi - w).re;
        for (const auto& z : zs.exceptional) d -= 2 * inv_sq(xi - z).re;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const MpReal sp = zs.regular[i] - zs.regular[j];
            const MpReal coup = 2 / (sp * sp);
            d -= coup;
            a(2 * m + i, 2 * m + j) = to_double(coup);
        }
        a(2 * m + i, 2 * m + i) = to_double(d);
    }
    return h;
}

PartitionedHessian scaled_hessian(const PartitionedHessian& h, double K) {
    if (K <= 0) throw ConfigError("scaling parameter must be positive");
    PartitionedHessian out = h;
    const int m = h.m, n = h.n;
    Mat& a = out.entries;
    for (int r = 0; r < 2 * m; ++r)
        for (int i = 0; i < n; ++i) a(r, 2 * m + i) *= K;
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < 2 * m; ++c) a(2 * m + i, c) /= K;
    out.K = h.K * K;
    return out;
}

PartitionedHessian unscaled(const PartitionedHessian& h) {
    if (h.K == 1.0) return h;
    PartitionedHessian out = scaled_hessian(h, 1.0 / h.K);
    out.K = 1.0;
    return out;
}

namespace {

struct RowSums {
    // off-axis block rows: diagonal reciprocal, same-family off sum,
    // on-axis-column sum (scales with K)
    std::vector<double> recr, s_exc, s_reg;
    // on-axis rows: |diagonal|, same-family off sum, off-axis-column sum
    // (scales with 1/K)
    std::vector<double> d_abs, s_rr, s_re;
};

RowSums row_sums(const PartitionedHessian& h) {
    const int m = h.m, n = h.n;
    const Mat& a = h.entries;
    RowSums rs;
    for (int k = 0; k < m; ++k) {
        const double av = a(2 * k, 2 * k), bv = a(2 * k, 2 * k + 1);
        const double vsum = std::fabs(av) + std::fabs(bv);
        rs.recr.push_back(vsum > 0 ? (av * av + bv * bv) / vsum : 0.0);
        double se = 0;
        for (int l = 0; l < m; ++l) {
            if (l == k) continue;
            double top = std::fabs(a(2 * k, 2 * l)) + std::fabs(a(2 * k, 2 * l + 1));
            double bot = std::fabs(a(2 * k + 1, 2 * l)) + std::fabs(a(2 * k + 1, 2 * l + 1));
            se += std::max(top, bot);
        }
        rs.s_exc.push_back(se);
        double sr = 0;
        for (int i = 0; i < n; ++i)
            sr += std::max(std::fabs(a(2 * k, 2 * m + i)), std::fabs(a(2 * k + 1, 2 * m + i)));
        rs.s_reg.push_back(sr);
    }
    for (int i = 0; i < n; ++i) {
        rs.d_abs.push_back(std::fabs(a(2 * m + i, 2 * m + i)));
        double srr = 0;
        for (int j = 0; j < n; ++j)
            if (j != i) srr += std::fabs(a(2 * m + i, 2 * m + j));
        rs.s_rr.push_back(srr);
        double sre = 0;
        for (int k = 0; k < m; ++k)
            sre += std::fabs(a(2 * m + i, 2 * k)) + std::fabs(a(2 * m + i, 2 * k + 1));
        rs.s_re.push_back(sre);
    }
    return rs;
}

} // namespace

ScalingSearch find_scaling_K(const PartitionedHessian& h) {
    const PartitionedHessian base = unscaled(h);
    ScalingSearch out;

    const auto margins_for = [&](double K) {
        const PartitionedHessian cand = scaled_hessian(base, K);
        BlockPartition pi = hessian_partition(cand.m, cand.n);
        return is_strictly_block_diagonally_dominant(cand.entries, pi);
    };

    // stage 1: powers of two, smallest |t| first (t = 0, 1, -1, 2, -2, ...)
    for (int step = 0; step <= 40; ++step) {
        const int t = (step + 1) / 2 * ((step % 2) ? 1 : -1);
        if (std::abs(t) > 20) continue;
        const double K = std::ldexp(1.0, t);
        const DominanceVerdict v = margins_for(K);
        if (v.dominant) {
            out.found = true;
            out.K = K;
            out.margins = v.margins;
            break;
        }
    }

    // closed-form feasibility window from the one-parameter margin family;
    // reported always, used as stage 2 when no power of two landed inside
    const RowSums rs = row_sums(base);
    double lo = 0, hi = std::numeric_limits<double>::infinity();
    bool feasible = true;
    for (int k = 0; k < base.m; ++k) {
        const double head = rs.recr[k] - rs.s_exc[k];
        if (rs.s_reg[k] <= 0) {
            if (head <= 0) feasible = false;
            continue;
        }
        hi = std::min(hi, head / rs.s_reg[k]);
    }
    for (int i = 0; i < base.n; ++i) {
        const double head = rs.d_abs[i] - rs.s_rr[i];
        if (head <= 0) {
            feasible = false;
            continue;
        }
        if (rs.s_re[i] > 0) lo = std::max(lo, rs.s_re[i] / head);
    }
    if (feasible && std::isfinite(hi)) {
        out.K_low = lo;
        out.K_high = hi;
        out.window_valid = true;
    }
    if (!out.found && out.window_valid && lo < hi) {
        const double K = lo > 0 ? std::sqrt(lo * hi) : hi / 2;
        const DominanceVerdict v = margins_for(K);
        if (v.dominant) {
            out.found = true;
            out.K = K;
            out.margins = v.margins;
        }
    }
    return out;
}

} // namespace xh
