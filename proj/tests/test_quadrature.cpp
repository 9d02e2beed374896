#include <doctest.h>

#include "xhermite/errors.hpp"
#include "xhermite/partition.hpp"
#include "xhermite/quadrature.hpp"
#include "xhermite/zeros.hpp"

#include <cmath>

using namespace xh;

namespace {

double d(const MpReal& v) { return v.convert_to<double>(); }

} // namespace

TEST_CASE("rule nodes are the classical zeros; weights are positive and symmetric") {
    GaussHermiteRule rule = gauss_hermite(5, 192);
    REQUIRE(rule.nodes.size() == 5);
    REQUIRE(rule.weights.size() == 5);
    std::vector<MpReal> z = classical_hermite_zeros(5, 192);
    for (size_t i = 0; i < 5; ++i) {
        CHECK(std::fabs(d(rule.nodes[i] - z[i])) < 1e-40);
        CHECK(rule.weights[i] > 0);
    }
    CHECK(std::fabs(d(rule.weights[0] - rule.weights[4])) < 1e-40);
    CHECK(std::fabs(d(rule.weights[1] - rule.weights[3])) < 1e-40);
    CHECK_THROWS_AS(gauss_hermite(0, 192), ConfigError);
}

TEST_CASE("moments integrate exactly up to the rule order") {
    ScopedPrecision guard(192);
    GaussHermiteRule rule = gauss_hermite(5, 192);
    MpReal rt_pi = sqrt(4 * atan(MpReal(1)));
    // moments of e^{-x^2}: 0th = sqrt(pi), 2nd = sqrt(pi)/2, 4th = 3 sqrt(pi)/4,
    // 6th = 15 sqrt(pi)/8, 8th = 105 sqrt(pi)/16; odd moments vanish
    std::vector<MpReal> expected{rt_pi,          MpReal(0), rt_pi / 2,       MpReal(0),
                                 rt_pi * 3 / 4,  MpReal(0), rt_pi * 15 / 8,  MpReal(0),
                                 rt_pi * 105 / 16};
    for (size_t k = 0; k < expected.size(); ++k) {
        MpReal s = 0;
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            MpReal t = 1;
            for (size_t p = 0; p < k; ++p) t *= rule.nodes[i];
            s += rule.weights[i] * t;
        }
        CHECK(std::fabs(d(s - expected[k])) < 1e-40);
    }
}

TEST_CASE("normalized cross inner products vanish for distinct admissible degrees") {
    Partition lambda = make_partition({1, 1});
    // same parity (both odd totals here): the integrand does not vanish by
    // symmetry alone, so this exercises the full cancellation.  The modified
    // weight is rational, so the node rule converges algebraically — the
    // advertised bound is 1e-8, not the working-precision floor.
    MpReal v = orthogonality_check(lambda, 3, 5, 200, 192);
    CHECK(d(abs(v)) < 1e-8);
    MpReal w = orthogonality_check(lambda, 5, 9, 220, 192);
    CHECK(d(abs(w)) < 1e-8);

    Partition p22 = make_partition({2, 2});
    MpReal u = orthogonality_check(p22, 2, 6, 200, 192);
    CHECK(d(abs(u)) < 1e-8);

    // the classical case through the same code path: a polynomial integrand,
    // integrated exactly, so only rounding noise remains
    Partition none = make_partition({});
    MpReal c = orthogonality_check(none, 2, 3, 200, 192);
    CHECK(d(abs(c)) < 1e-40);
}

TEST_CASE("orthogonality check input validation") {
    Partition lambda = make_partition({1, 1});
    CHECK_THROWS_AS(orthogonality_check(lambda, 3, 3, 200, 192), ConfigError);
    CHECK_THROWS_AS(orthogonality_check(lambda, 3, 5, 199, 192), ConfigError);
    CHECK_THROWS_AS(orthogonality_check(lambda, 1, 5, 200, 192), InadmissibleDegree);
    CHECK_THROWS_AS(orthogonality_check(lambda, 3, 2, 200, 192), InadmissibleDegree);
}
