#include "xhermite/pipeline.hpp"

#include "xhermite/errors.hpp"

#include <algorithm>
#include <cmath>

namespace xh {

CaseData build_case(const Partition& lambda, int n, unsigned precision_bits) {
    CaseData cs;
    cs.lambda = lambda;
    cs.n = n;
    cs.bits = precision_bits;
    cs.denom = generalized_hermite(lambda);
    cs.p = exceptional_hermite(lambda, lambda.size + n);
    cs.hw = all_roots(cs.denom, precision_bits);
    if (lambda.even)
        for (const auto& w : cs.hw.roots)
            if (w.im == 0)
                throw RealExceptionalZero("denominator has a real root despite even partition");

    const int m = lambda.size;
    std::vector<MpComplex> seeds = cs.hw.roots;
    if (n > 0) {
        // classical zeros of the full degree, minus the m of them closest to
        // the denominator roots' real parts (those slots belong to the
        // off-axis seeds)
        std::vector<MpReal> classical = classical_hermite_zeros(m + n, 64);
        std::vector<bool> taken(classical.size(), false);
        for (const auto& w : cs.hw.roots) {
            int best = -1;
            MpReal bestd = 0;
            for (size_t i = 0; i < classical.size(); ++i) {
                if (taken[i]) continue;
                const MpReal d = abs(classical[i] - w.re);
                if (best < 0 || d < bestd) {
                    best = static_cast<int>(i);
                    bestd = d;
                }
            }
            taken[best] = true;
        }
        for (size_t i = 0; i < classical.size(); ++i)
            if (!taken[i]) seeds.push_back(MpComplex(classical[i], MpReal(0)));
    }

    cs.proots = all_roots(cs.p, precision_bits, std::move(seeds));
    cs.zs = classify_zeros(cs.proots.roots, lambda, n, default_tol_imag(precision_bits));
    return cs;
}

} // namespace xh
