#include "xhermite/quadrature.hpp"

#include "xhermite/errors.hpp"
#include "xhermite/poly.hpp"
#include "xhermite/zeros.hpp"

#include <cmath>

namespace xh {

GaussHermiteRule gauss_hermite(int points, unsigned precision_bits) {
    if (points < 1) throw ConfigError("quadrature needs at least one point");
    GaussHermiteRule rule;
    rule.nodes = classical_hermite_zeros(points, precision_bits);
    ScopedPrecision guard(precision_bits + 64);
    const MpReal pi = 4 * atan(MpReal(1));
    BigInt num = BigInt(1) << (points - 1);
    for (int i = 2; i <= points; ++i) num *= i;
    const MpReal front = MpReal(num) * sqrt(pi) / (MpReal(points) * points);
    const ExactPoly hprev = hermite(points - 1);
    // the polynomial evaluation needs the same cancellation guard as the
    // zero refinement: values at the outer nodes are ~e^{-x^2} relative to
    // the coefficient scale
    const unsigned eval_bits = precision_bits + 64 + 3 * static_cast<unsigned>(points);
    rule.weights.reserve(rule.nodes.size());
    for (const auto& x : rule.nodes) {
        const MpReal h = eval_extended(hprev, x, eval_bits).value.re;
        rule.weights.push_back(front / (h * h));
    }
    return rule;
}

MpReal orthogonality_check(const Partition& lambda, int n1, int n2, int quad_points,
                           unsigned precision_bits) {
    if (n1 == n2) throw ConfigError("degrees must differ");
    if (quad_points < 200) throw ConfigError("need at least 200 quadrature points");
    if (!is_admissible_degree(lambda, n1) || !is_admissible_degree(lambda, n2))
        throw InadmissibleDegree("both degrees must be admissible for the partition");

    const ExactPoly denom = generalized_hermite(lambda);
    const ExactPoly p1 = exceptional_hermite(lambda, n1);
    const ExactPoly p2 = exceptional_hermite(lambda, n2);
    const GaussHermiteRule rule = gauss_hermite(quad_points, precision_bits);

    ScopedPrecision guard(precision_bits + 64);
    const unsigned eval_bits = precision_bits + 64 + 3 * static_cast<unsigned>(quad_points);
    MpReal ip = 0, norm1 = 0, norm2 = 0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const MpReal& x = rule.nodes[i];
        const MpReal g = eval_extended(denom, x, eval_bits).value.re;
        if (g == 0) throw PointAtPoleOfW("quadrature node hits a denominator zero");
        const MpReal v1 = eval_extended(p1, x, eval_bits).value.re / g;
        const MpReal v2 = eval_extended(p2, x, eval_bits).value.re / g;
        ip += rule.weights[i] * v1 * v2;
        norm1 += rule.weights[i] * v1 * v1;
        norm2 += rule.weights[i] * v2 * v2;
    }
    return abs(ip) / sqrt(norm1 * norm2);
}

} // namespace xh
