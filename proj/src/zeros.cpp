#include "xhermite/zeros.hpp"

#include "xhermite/errors.hpp"
#include "xhermite/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace xh {

namespace {

// Working precision for evaluations near the zeros: Horner cancellation for
// Gaussian-family polynomials costs up to ~max(zero)^2 / ln 2 bits, and the
// zeros live inside |z| ~ sqrt(2 deg); 3 bits per unit degree covers that
// with slack.
unsigned guarded_bits(unsigned bits, int deg) {
    return bits + 64 + static_cast<unsigned>(3 * std::max(deg, 1));
}

MpComplex newton_step(const ExactPoly& p, const ExactPoly& dp, const MpComplex& z,
                      unsigned work_bits) {
    const EvalResult fv = eval_extended(p, z, work_bits);
    const EvalResult dv = eval_extended(dp, z, work_bits);
    if (abs(dv.value) == 0) return MpComplex(MpReal(0), MpReal(0));
    return fv.value / dv.value;
}

} // namespace

std::vector<MpReal> classical_hermite_zeros(int N, unsigned precision_bits) {
    if (N < 1) throw ConfigError("degree must be positive");
    if (N == 1) return {MpReal(0)};
    // Golub–Welsch seeds: eigenvalues of the symmetric tridiagonal Jacobi
    // matrix in double precision.
    Mat j(N, N);
    for (int k = 1; k < N; ++k) {
        const double b = std::sqrt(k / 2.0);
        j(k - 1, k) = b;
        j(k, k - 1) = b;
    }
    std::vector<double> seeds = symmetric_eigenvalues(j);

    const unsigned work = guarded_bits(precision_bits, N);
    ScopedPrecision guard(work);
    const ExactPoly h = hermite(N);
    const ExactPoly dh = derivative(h);
    const MpReal stop = ldexp(MpReal(1), -static_cast<long>(precision_bits) - 8);

    std::vector<MpReal> zs(N);
    for (int i = 0; i < N; ++i) {
        MpComplex z(MpReal(seeds[i]), MpReal(0));
        for (int it = 0; it < 80; ++it) {
            const MpComplex d = newton_step(h, dh, z, work);
            z = z - d;
            if (abs(d) <= stop * std::max(MpReal(1), abs(z))) break;
        }
        zs[i] = z.re;
    }
    std::sort(zs.begin(), zs.end());
    // enforce the exact symmetry about 0
    for (int i = 0; i < N / 2; ++i) {
        const MpReal avg = (zs[N - 1 - i] - zs[i]) / 2;
        zs[N - 1 - i] = avg;
        zs[i] = -avg;
    }
    if (N % 2 == 1) zs[N / 2] = 0;
    return zs;
}

namespace {

std::vector<MpComplex> default_seeds(const ExactPoly& p) {
    // scaled unit circle at the Cauchy radius, rotated off the axes so that
    // symmetric configurations cannot trap the iteration
    const int deg = p.degree();
    MpReal maxc = 0;
    for (const auto& c : p.c) maxc = std::max(maxc, abs(MpReal(c)));
    const MpReal radius = 1 + maxc / abs(MpReal(p.lead()));
    std::vector<MpComplex> seeds(deg);
    ScopedPrecision guard(64);
    const MpReal pi = 4 * atan(MpReal(1));
    for (int i = 0; i < deg; ++i) {
        const MpReal ang = 2 * pi * i / deg + MpReal(2) / 5;
        seeds[i] = MpComplex(radius * cos(ang), radius * sin(ang));
    }
    return seeds;
}

// Pair the root list with its own conjugate image (greedy nearest match) and
// average the members, so real-coefficient inputs come out exactly
// conjugate-symmetric. A root matched to itself gets its imaginary part
// averaged away, which is the correct limit for a real simple root.
void symmetrize_conjugates(std::vector<MpComplex>& zs) {
    const int n = static_cast<int>(zs.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return zs[a].im > zs[b].im; });
    std::vector<bool> used(n, false);
    for (int oi = 0; oi < n; ++oi) {
        const int i = order[oi];
        if (used[i]) continue;
        int best = -1;
        MpReal bestd = 0;
        for (int j = 0; j < n; ++j) {
            if (used[j] && j != i) continue;
            const MpReal d = abs(zs[i] - conj(zs[j]));
            if (best < 0 || d < bestd) {
                best = j;
                bestd = d;
            }
        }
        used[i] = true;
        if (best == i) {
            zs[i].im = 0;
        } else {
            used[best] = true;
            const MpComplex avg = (zs[i] + conj(zs[best])) * MpReal(0.5);
            zs[i] = avg;
            zs[best] = conj(avg);
        }
    }
}

} // namespace

HRoots all_roots(const ExactPoly& p, unsigned precision_bits, std::vector<MpComplex> seeds) {
    if (p.is_zero()) throw ConfigError("cannot solve the zero polynomial");
    const int deg = p.degree();
    HRoots out;
    out.lead = p.lead();
    if (deg == 0) return out;
    if (!is_squarefree(p)) throw NotSquarefree("input has repeated roots");

    const unsigned work = guarded_bits(precision_bits, deg);
    ScopedPrecision guard(work);
    if (seeds.empty()) seeds = default_seeds(p);
    if (static_cast<int>(seeds.size()) != deg)
        throw ConfigError("seed count does not match the degree");

    const ExactPoly dp = derivative(p);
    const MpReal stop = ldexp(MpReal(1), -static_cast<long>(precision_bits) - 8);
    std::vector<MpComplex>& z = seeds;
    bool converged = false;
    for (int it = 0; it < 500; ++it) {
        MpReal worst = 0;
        for (int i = 0; i < deg; ++i) {
            // reciprocal form 1/(p'/p - sum 1/(z_i - z_j)): stays bounded even
            // when a point sits on a critical point of p (p' == 0, p != 0),
            // which happens for seeds placed at the denominator's roots
            const EvalResult fv = eval_extended(p, z[i], work);
            MpComplex delta(MpReal(0), MpReal(0));
            if (abs(fv.value) != 0) {
                const EvalResult dv = eval_extended(dp, z[i], work);
                MpComplex s(MpReal(0), MpReal(0));
                for (int j = 0; j < deg; ++j)
                    if (j != i) s = s + inv(z[i] - z[j]);
                const MpComplex den = dv.value / fv.value - s;
                // a vanishing denominator is a measure-zero tie; any finite
                // step breaks it and later sweeps recover
                delta = (abs(den) == 0) ? MpComplex(MpReal(1), MpReal(0)) : inv(den);
            }
            z[i] = z[i] - delta;
            worst = std::max(worst, abs(delta) / std::max(MpReal(1), abs(z[i])));
        }
        if (worst <= stop) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NonConvergence("simultaneous iteration did not settle in 500 sweeps");

    // polish at doubled precision
    const unsigned fine = guarded_bits(2 * precision_bits, deg);
    {
        ScopedPrecision fineguard(fine);
        for (int i = 0; i < deg; ++i) {
            MpComplex zi(MpReal(z[i].re), MpReal(z[i].im));
            for (int it = 0; it < 4; ++it) zi = zi - newton_step(p, dp, zi, fine);
            z[i] = zi;
        }
    }
    symmetrize_conjugates(z);
    std::sort(z.begin(), z.end(), [](const MpComplex& a, const MpComplex& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    });

    out.roots = z;
    out.residual.resize(deg);
    for (int i = 0; i < deg; ++i) {
        MpReal spacing = 0;
        for (int j = 0; j < deg; ++j) {
            if (j == i) continue;
            const MpReal d = abs(z[i] - z[j]);
            if (spacing == 0 || d < spacing) spacing = d;
        }
        if (deg == 1) spacing = 1;
        const EvalResult fv = eval_extended(p, z[i], fine);
        const EvalResult dv = eval_extended(dp, z[i], fine);
        const MpReal dn = abs(dv.value) * spacing;
        out.residual[i] = dn > 0 ? abs(fv.value) / dn : MpReal(0);
    }
    return out;
}

MpReal default_tol_imag(unsigned precision_bits) {
    return ldexp(MpReal(1), -static_cast<long>(precision_bits / 2));
}

ZeroSet classify_zeros(const std::vector<MpComplex>& roots, const Partition& lambda, int n,
                       const MpReal& tol_imag) {
    const int m = lambda.size;
    if (static_cast<int>(roots.size()) != m + n)
        throw CountMismatch("expected " + std::to_string(m + n) + " roots, got " +
                            std::to_string(roots.size()));
    ZeroSet zs;
    zs.lambda_ref = lambda;
    zs.degree = m + n;
    std::vector<MpComplex> complex_ones;
    for (const auto& z : roots) {
        if (abs(z.im) <= tol_imag * std::max(MpReal(1), abs(z)))
            zs.regular.push_back(z.re);
        else
            complex_ones.push_back(z);
    }
    if (static_cast<int>(zs.regular.size()) != n || static_cast<int>(complex_ones.size()) != m)
        throw CountMismatch("classification split " + std::to_string(zs.regular.size()) + "+" +
                            std::to_string(complex_ones.size()) + ", expected " +
                            std::to_string(n) + "+" + std::to_string(m));
    std::sort(zs.regular.begin(), zs.regular.end());
    for (size_t i = 1; i < zs.regular.size(); ++i)
        if (zs.regular[i] == zs.regular[i - 1])
            throw CoincidentPoints("repeated real zero after snapping");

    // arrange conjugate pairs, positive imaginary part first
    std::vector<MpComplex> upper;
    std::vector<MpComplex> lower;
    for (const auto& z : complex_ones) (z.im > 0 ? upper : lower).push_back(z);
    if (upper.size() != lower.size())
        throw CountMismatch("non-real zeros do not balance into conjugate pairs");
    std::sort(upper.begin(), upper.end(), [](const MpComplex& a, const MpComplex& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    });
    std::vector<bool> used(lower.size(), false);
    for (const auto& u : upper) {
        int best = -1;
        MpReal bestd = 0;
        for (size_t j = 0; j < lower.size(); ++j) {
            if (used[j]) continue;
            const MpReal d = abs(conj(u) - lower[j]);
            if (best < 0 || d < bestd) {
                best = static_cast<int>(j);
                bestd = d;
            }
        }
        used[best] = true;
        zs.exceptional.push_back(u);
        zs.exceptional.push_back(lower[best]);
    }
    return zs;
}

DeviationReport exceptional_deviation(const ZeroSet& zs, const HRoots& hw) {
    const int m = static_cast<int>(hw.roots.size());
    if (static_cast<int>(zs.exceptional.size()) != m)
        throw CountMismatch("zero and pole counts differ");
    DeviationReport rep;
    rep.matched.assign(m, -1);
    rep.distance.assign(m, MpReal(0));
    std::vector<bool> used(m, false);
    for (int k = 0; k < m; ++k) {
        int best = -1;
        bool have_second = false;
        MpReal bestd = 0, second = 0;
        for (int j = 0; j < m; ++j) {
            if (used[j]) continue;
            const MpReal d = abs(zs.exceptional[j] - hw.roots[k]);
            if (best < 0) {
                best = j;
                bestd = d;
            } else if (d < bestd) {
                second = bestd;
                have_second = true;
                best = j;
                bestd = d;
            } else if (!have_second || d < second) {
                second = d;
                have_second = true;
            }
        }
        if (best >= 0 && have_second && bestd > 0 && second / bestd < MpReal(101) / 100)
            throw MatchingAmbiguous("two zeros within 1% of the same pole distance");
        used[best] = true;
        rep.matched[k] = best;
        rep.distance[k] = bestd;
    }
    rep.max_distance = rep.distance[0];
    rep.min_distance = rep.distance[0];
    for (const auto& d : rep.distance) {
        rep.max_distance = std::max(rep.max_distance, d);
        rep.min_distance = std::min(rep.min_distance, d);
    }
    return rep;
}

IdentityResidual km_identity_residual(const ZeroSet& zs, const HRoots& hw,
                                      unsigned precision_bits) {
    ScopedPrecision guard(precision_bits);
    const int m = static_cast<int>(hw.roots.size());
    const DeviationReport match = exceptional_deviation(zs, hw);
    const MpReal floor_dist = pow(MpReal(10), -static_cast<int>(precision_bits) / 4);
    IdentityResidual res;
    for (int k = 0; k < m; ++k) {
        const MpComplex wk = hw.roots[k];
        const MpComplex zk = zs.exceptional[match.matched[k]];
        if (abs(wk - zk) < floor_dist)
            throw DegenerateDistance("matched zero coincides with the pole at working precision");
        MpComplex rhs = wk;
        for (int l = 0; l < m; ++l)
            if (l != k) rhs = rhs + inv(wk - hw.roots[l]);
        for (int l = 0; l < m; ++l)
            if (match.matched[l] != match.matched[k])
                rhs = rhs - inv(wk - zs.exceptional[match.matched[l]]);
        for (const auto& x : zs.regular) rhs = rhs - inv(wk - MpComplex(x, MpReal(0)));
        const MpComplex lhs = inv(wk - zk);
        const MpComplex r = lhs - rhs;
        res.absolute.push_back(r);
        res.relative.push_back(abs(r) / abs(lhs));
    }
    return res;
}

int interlacing_report(const std::vector<MpReal>& regular, const std::vector<MpReal>& classical,
                       int r) {
    if (r < 0) throw ConfigError("interlacing slack must be nonnegative");
    int count = 0;
    for (size_t k = 0; k + 1 < classical.size(); ++k) {
        for (const auto& x : regular) {
            if (x > classical[k] && x < classical[k + 1]) {
                ++count;
                break;
            }
        }
    }
    return count;
}

MpReal inverse_distance_scan(const MpReal& a, const MpReal& b,
                             const std::vector<MpReal>& regular) {
    if (b == 0) throw ConfigError("offset b must be nonzero");
    MpReal s = 0;
    for (const auto& x : regular) s += 1 / ((a - x) * (a - x) + b * b);
    return s;
}

} // namespace xh
