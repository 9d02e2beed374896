#pragma once

#include "xhermite/mp.hpp"
#include "xhermite/partition.hpp"

#include <vector>

namespace xh {

struct GaussHermiteRule {
    std::vector<MpReal> nodes;   // ascending
    std::vector<MpReal> weights; // 2^(N-1) N! sqrt(pi) / (N^2 H_{N-1}(x_i)^2)
};

GaussHermiteRule gauss_hermite(int points, unsigned precision_bits);

// Quadrature of P_{n1} P_{n2} / denom^2 against e^{-x^2}, normalized by the
// two quadrature norms; near zero for distinct admissible degrees.
// quad_points must be at least 200 (the rational factor needs headroom well
// past polynomial exactness).
MpReal orthogonality_check(const Partition& lambda, int n1, int n2, int quad_points,
                           unsigned precision_bits);

} // namespace xh
