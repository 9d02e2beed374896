#include "xhermite/dnu.hpp"

#include "xhermite/errors.hpp"
#include "xhermite/fits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace xh {

namespace {

BigInt factorial(int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace

MpReal DnuPoly::scale(unsigned precision_bits) const {
    ScopedPrecision guard(precision_bits);
    const MpReal pi = 4 * atan(MpReal(1));
    return 1 / sqrt(pi * MpReal(scale_radicand));
}

MpReal DnuPoly::value(const MpReal& x, unsigned precision_bits) const {
    const EvalResult ev = eval_extended(exact_part, x, precision_bits);
    return scale(precision_bits) * ev.value.re;
}

DnuPoly dnu(int nu) {
    if (nu < 0) throw ConfigError("nu must be nonnegative");
    DnuPoly d;
    d.nu = nu;
    const ExactPoly hn = hermite(nu), hn1 = hermite(nu + 1);
    d.exact_part = hn * derivative(hn1) - derivative(hn) * hn1;
    d.scale_radicand = (BigInt(1) << (2 * nu + 1)) * factorial(nu) * factorial(nu + 1);

    if (d.exact_part.degree() != 2 * nu)
        throw DegreeMismatch("determinant form has wrong degree");
    for (int k = 1; k <= d.exact_part.degree(); k += 2)
        if (d.exact_part.coeff(k) != 0) throw DegreeMismatch("determinant form is not even");
    if (!is_squarefree(d.exact_part)) throw NotSquarefree("determinant form has repeated roots");

    // agreement with the two-row Wronskian construction, up to a constant
    // positive rational factor: cross-multiplied leading coefficients must
    // equalize the full polynomials
    if (nu >= 1) {
        const Partition lam = make_partition(std::vector<int>(2, nu));
        const ExactPoly g = generalized_hermite(lam);
        if (!(d.exact_part * g.lead() == g * d.exact_part.lead()) || d.exact_part.lead() <= 0 ||
            g.lead() <= 0)
            throw DegreeMismatch("determinant form disagrees with the Wronskian construction");
    }

    // Christoffel–Darboux: d_nu(x) = sqrt(2/(nu+1)) * sum_{k<=nu} h_k(x)^2
    {
        const unsigned bits = 256;
        ScopedPrecision guard(bits);
        const MpReal pi = 4 * atan(MpReal(1));
        const MpReal sqrtpi = sqrt(pi);
        const MpReal ratio = sqrt(MpReal(2) / (nu + 1));
        for (int s = 0; s < 2 * nu + 5; ++s) {
            const MpReal x = MpReal(s) / 2 - nu; // covers [-nu, nu+2]
            MpReal cd = 0;
            for (int k = 0; k <= nu; ++k) {
                const MpReal hk = eval_extended(hermite(k), x, bits).value.re;
                cd += hk * hk / (MpReal((BigInt(1) << k) * factorial(k)) * sqrtpi);
            }
            cd *= ratio;
            const MpReal det_form = d.value(x, bits);
            if (abs(det_form - cd) > 1e-10 * abs(cd))
                throw DegreeMismatch("determinant and kernel-sum forms disagree");
        }
    }
    return d;
}

bool dnu_ode_check(int nu) {
    const DnuPoly d = dnu(nu);
    const ExactPoly& D = d.exact_part;
    const ExactPoly hn = hermite(nu);
    const ExactPoly x({BigInt(0), BigInt(1)});
    const ExactPoly lhs = hn * derivative(D, 2) -
                          (x * hn * BigInt(2) + derivative(hn) * BigInt(2)) * derivative(D) +
                          x * derivative(hn) * BigInt(4) * D;
    return lhs.is_zero();
}

std::pair<bool, bool> product_identities_check(int nu) {
    const DnuPoly d = dnu(nu);
    const ExactPoly& D = d.exact_part;
    const ExactPoly hn = hermite(nu), hn1 = hermite(nu + 1);
    const ExactPoly x({BigInt(0), BigInt(1)});
    const ExactPoly lhs1 = x * hn * hn1 * BigInt(2);
    const ExactPoly rhs1 = hn * hn * BigInt(2 * (nu + 1)) + hn1 * hn1 - D;
    const ExactPoly lhs2 = derivative(hn) * hn1;
    const ExactPoly rhs2 = hn * hn * BigInt(2 * (nu + 1)) - D;
    return {lhs1 == rhs1, lhs2 == rhs2};
}

MpComplex r_mn(int nu, int n, const MpComplex& z, unsigned precision_bits) {
    ScopedPrecision guard(precision_bits);
    const DnuPoly d = dnu(nu);
    const MpComplex dz = eval_extended(d.exact_part, z, precision_bits).value;
    const MpReal floor_d = ldexp(MpReal(1), -static_cast<int>(precision_bits) / 2);
    if (abs(dz) < floor_d)
        throw PoleOfDnu("denominator value below the precision floor");
    const MpComplex hn = eval_extended(hermite(nu), z, precision_bits).value;
    const MpComplex hn1 = eval_extended(hermite(nu + 1), z, precision_bits).value;
    const MpComplex num = hn * hn * MpReal(16 * (nu + 1)) + hn1 * hn1 * MpReal(4);
    return -(z * z * MpReal(8)) - MpComplex(MpReal(8 + 2 * n), MpReal(0)) + num / dz;
}

MpComplex exceptional_curvature(const ExactPoly& p, const HRoots& hw, const MpComplex& zk,
                                unsigned precision_bits) {
    ScopedPrecision guard(precision_bits);
    const EvalResult p1r = eval_extended(derivative(p), zk, precision_bits);
    const MpComplex p1 = p1r.value;
    // a value inside (a small multiple of) its own rounding-error bound is
    // indistinguishable from zero, and dividing by it would amplify noise
    if (abs(p1) <= p1r.bound * 4)
        throw PoleProximity("first derivative vanishes at the zero to working precision");
    const MpComplex p2 = eval_extended(derivative(p, 2), zk, precision_bits).value;
    const MpComplex p3 = eval_extended(derivative(p, 3), zk, precision_bits).value;
    const MpComplex c1 = p2 / (p1 * MpReal(2));
    const MpComplex c2 = p3 / (p1 * MpReal(6));
    const MpComplex pair_sum = c1 * c1 - c2 * MpReal(2); // sum over other zeros of 1/(zk-.)^2
    MpComplex c(MpReal(-2), MpReal(0));
    for (const auto& w : hw.roots) {
        const MpComplex iv = inv(zk - w);
        c = c + iv * iv * MpReal(2);
    }
    return c - pair_sum * MpReal(2);
}

SaddleVerdict saddle_check(const CaseData& cs) {
    const PartitionedHessian h = hessian(cs.zs, cs.hw);
    SaddleVerdict v;
    v.scaling = find_scaling_K(h);
    v.dominant = v.scaling.found;

    const int m = h.m, n = h.n;
    v.on_axis_negative = true;
    double worst_diag = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double d = h.entries(2 * m + i, 2 * m + i);
        worst_diag = std::max(worst_diag, d);
        if (!(d < 0)) v.on_axis_negative = false;
    }
    v.min_on_axis_margin = n > 0 ? -worst_diag : 0;

    v.off_axis_negative = true;
    double min_abs_a = std::numeric_limits<double>::infinity();
    for (int k = 0; k < m; ++k) {
        const double a = h.entries(2 * k, 2 * k);
        min_abs_a = std::min(min_abs_a, std::fabs(a));
        if (!(a < 0)) v.off_axis_negative = false;
    }
    v.min_off_axis_margin = m > 0 ? min_abs_a : 0;
    return v;
}

SaddleVerdict saddle_check(int nu, int n, unsigned precision_bits) {
    const Partition lambda = make_partition({nu, nu});
    return saddle_check(build_case(lambda, n, precision_bits));
}

CrossValidation hessian_cross_check(const CaseData& cs, const PartitionedHessian& h) {
    if (cs.lambda.length != 2 || cs.lambda.parts[0] != cs.lambda.parts[1])
        throw ConfigError("cross-check requires a two-row rectangular partition");
    CrossValidation cv;
    const int nu = cs.lambda.parts[0];
    for (int k = 0; k < h.m; ++k) {
        const double a = h.entries(2 * k, 2 * k);
        const double b = h.entries(2 * k, 2 * k + 1);
        const MpComplex zk = cs.zs.exceptional[k];
        const MpComplex r = r_mn(nu, cs.n, zk, cs.bits);
        const MpComplex c = exceptional_curvature(cs.p, cs.hw, zk, cs.bits);
        cv.assembled_a.push_back(a);
        cv.assembled_b.push_back(b);
        cv.displayed_re.push_back(to_double(r.re));
        cv.displayed_im.push_back(to_double(r.im));
        const double scale_a = std::max(std::fabs(a), 1e-30);
        cv.rel_dev_re.push_back(std::fabs(to_double(r.re) - a) / scale_a);
        cv.rel_dev_im.push_back(std::fabs(to_double(r.im) - b) / scale_a);
        cv.max_rel_dev = std::max({cv.max_rel_dev, cv.rel_dev_re.back(), cv.rel_dev_im.back()});
        // assembled block encodes conj(C): (a, b) = (Re C, -Im C)
        cv.curvature_re.push_back(to_double(c.re));
        cv.curvature_im.push_back(to_double(c.im));
        const double dev = std::hypot(to_double(c.re) - a, -to_double(c.im) - b) /
                           std::max(std::hypot(a, b), 1e-30);
        cv.curvature_rel_dev.push_back(dev);
        cv.max_curvature_dev = std::max(cv.max_curvature_dev, dev);
    }
    return cv;
}

DistanceFit distance_bound_fit(int nu, const std::vector<int>& n_grid, unsigned precision_bits) {
    DistanceFit fit;
    const Partition lam = make_partition(std::vector<int>(2, nu));
    std::vector<std::pair<double, double>> series;
    for (const int n : n_grid) {
        const CaseData cs = build_case(lam, n, precision_bits);
        const DeviationReport dev = exceptional_deviation(cs.zs, cs.hw);
        fit.n_values.push_back(n);
        fit.min_dist.push_back(to_double(dev.min_distance));
        fit.max_dist.push_back(to_double(dev.max_distance));
        series.emplace_back(n, to_double(dev.max_distance));
        const double scaled =
            to_double(dev.min_distance) * std::sqrt(double(n)) * std::log(double(n));
        fit.min_scaled_c = fit.min_scaled_c == 0 ? scaled : std::min(fit.min_scaled_c, scaled);
    }
    if (series.size() >= 4) {
        const FitResult fr = asymptotic_fit(series);
        fit.slope = fr.exponent;
        fit.fit_valid = true;
    }
    return fit;
}

} // namespace xh
