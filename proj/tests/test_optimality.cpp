#include <doctest.h>

#include "xhermite/errors.hpp"
#include "xhermite/matrix.hpp"
#include "xhermite/optimality.hpp"
#include "xhermite/partition.hpp"
#include "xhermite/pipeline.hpp"
#include "xhermite/poly.hpp"
#include "xhermite/zeros.hpp"

#include <cmath>
#include <vector>

using namespace xh;

namespace {

double d(const MpReal& v) { return v.convert_to<double>(); }

} // namespace

TEST_CASE("plain weight: closed-form log derivatives") {
    ScopedPrecision guard(192);
    WeightSpec ws = WeightSpec::classical();
    MpReal x("0.7");
    CHECK(d(log_weight_value(ws, x)) == doctest::Approx(-0.49).epsilon(1e-14));
    CHECK(d(log_weight_slope(ws, x)) == doctest::Approx(-1.4).epsilon(1e-14));
    CHECK(d(log_weight_curv(ws, x)) == doctest::Approx(-2.0).epsilon(1e-14));
    // the pair-difference derivative is defined for the modified shape only
    CHECK_THROWS_AS(m1n_derivative(ws, x), ConfigError);
}

TEST_CASE("denominator-damped weight: value and curvature at the origin") {
    ScopedPrecision guard(192);
    Partition lambda = make_partition({1, 1});
    HRoots hw = all_roots(generalized_hermite(lambda), 192);
    WeightSpec ws = WeightSpec::exceptional_w(lambda, 5, hw);
    // log w(0) = -2 log 8 - 2(log(1/sqrt 2) + log(1/sqrt 2)) = -4 log 2
    CHECK(d(log_weight_value(ws, MpReal(0))) ==
          doctest::Approx(-4 * std::log(2.0)).epsilon(1e-14));
    // (log w)''(0) = -2 + 2 Re(1/(0 - i/sqrt2)^2 + 1/(0 + i/sqrt2)^2) = -10
    CHECK(d(log_weight_curv(ws, MpReal(0))) == doctest::Approx(-10.0).epsilon(1e-14));
    // slope at the origin vanishes by symmetry
    CHECK(std::fabs(d(log_weight_slope(ws, MpReal(0)))) < 1e-50);
}

TEST_CASE("log derivatives agree with central differences") {
    ScopedPrecision guard(320);
    Partition lambda = make_partition({1, 1});
    CaseData cs = build_case(lambda, 5, 320);
    WeightSpec ws = WeightSpec::modified(lambda, 5, cs.hw, cs.zs.exceptional);
    const MpReal step("1e-12");
    for (double xv : {0.31, 1.27, -2.6}) {
        MpReal x(xv);
        MpReal v_up = log_weight_value(ws, x + step);
        MpReal v_dn = log_weight_value(ws, x - step);
        CHECK(std::fabs(d((v_up - v_dn) / (2 * step) - log_weight_slope(ws, x))) < 1e-10);
        MpReal s_up = log_weight_slope(ws, x + step);
        MpReal s_dn = log_weight_slope(ws, x - step);
        CHECK(std::fabs(d((s_up - s_dn) / (2 * step) - log_weight_curv(ws, x))) < 1e-10);
    }
}

TEST_CASE("weight construction guards") {
    Partition lambda = make_partition({1, 1});
    // the factory is a plain aggregate builder; evaluation is where a
    // root-less non-classical weight is rejected
    HRoots empty;
    WeightSpec rootless = WeightSpec::exceptional_w(lambda, 5, empty);
    CHECK_THROWS_AS(log_weight_value(rootless, MpReal(0)), ConfigError);
    CHECK_THROWS_AS(log_weight_slope(rootless, MpReal(0)), ConfigError);
    ScopedPrecision guard(192);
    HRoots hw = all_roots(generalized_hermite(lambda), 192);
    WeightSpec ws = WeightSpec::exceptional_w(lambda, 5, hw);
    CHECK_THROWS_AS(m1n_derivative(ws, MpReal(0)), ConfigError); // wrong kind
    // exactly on a (crafted) real pole of the weight: the log-value is the
    // well-defined limit -inf, while the derivative has no limit and throws
    HRoots real_pole;
    real_pole.roots = {MpComplex(0.5, 0.0)};
    WeightSpec bad = WeightSpec::exceptional_w(lambda, 5, real_pole);
    MpReal v = log_weight_value(bad, MpReal("0.5"));
    CHECK((isinf(v) && v > 0)); // pole of the denominator: -2*log|x-w| -> +inf
    CHECK_THROWS_AS(log_weight_slope(bad, MpReal("0.5")), CoincidentPoints);
}

TEST_CASE("modified weight keeps the pair-difference derivative negative") {
    Partition lambda = make_partition({1, 1});
    CaseData cs = build_case(lambda, 40, 192);
    WeightSpec ws = WeightSpec::modified(lambda, 40, cs.hw, cs.zs.exceptional);
    ScopedPrecision guard(192);
    double worst = -1e300;
    for (int i = 0; i < 400; ++i) {
        MpReal x = MpReal(-10) + MpReal(20) * i / 399;
        worst = std::max(worst, d(m1n_derivative(ws, x)));
    }
    CHECK(worst < 0);
    CHECK(worst == doctest::Approx(-1.5008).epsilon(5e-3));
}

TEST_CASE("definition check on the admissible-weight conditions") {
    Partition lambda = make_partition({1, 1});
    CaseData cs = build_case(lambda, 40, 192);
    WeightSpec ws = WeightSpec::modified(lambda, 40, cs.hw, cs.zs.exceptional);
    ApproximatingVerdict v = is_approximating(ws, -10, 10, 400);
    CHECK(v.convex_ok);
    CHECK(v.moments_ok);
    CHECK(v.boundary_skipped);
    CHECK(v.min_neg_curv > 0);
    CHECK(v.approximating());
    CHECK_THROWS_AS(is_approximating(ws, -10, 10, 99), ConfigError);
    CHECK_THROWS_AS(is_approximating(ws, 3, -3, 400), ConfigError);
}

TEST_CASE("two-point reduced problem: the textbook stationary pair") {
    ScopedPrecision guard(192);
    WeightSpec ws = WeightSpec::classical();
    MpReal s = 1 / sqrt(MpReal(2));
    std::vector<MpReal> x{-s, s};

    std::vector<MpReal> g = reduced_gradient(x, ws);
    REQUIRE(g.size() == 2);
    CHECK(std::fabs(d(g[0])) < 1e-50);
    CHECK(std::fabs(d(g[1])) < 1e-50);

    CHECK(d(reduced_log_energy(x, ws)) ==
          doctest::Approx(-1.0 + std::log(2.0)).epsilon(1e-14));

    Mat h = reduced_hessian(x, ws);
    REQUIRE(h.rows == 2);
    CHECK(h(0, 0) == doctest::Approx(-3.0).epsilon(1e-13));
    CHECK(h(0, 1) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(h(1, 0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(h(1, 1) == doctest::Approx(-3.0).epsilon(1e-13));
    std::vector<double> e = symmetric_eigenvalues(h);
    CHECK(e[0] == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(e[1] == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("coincident on-axis points are rejected") {
    ScopedPrecision guard(192);
    WeightSpec ws = WeightSpec::classical();
    std::vector<MpReal> x{MpReal("0.5"), MpReal("0.5")};
    // the energy has a well-defined limit at a collision; the derivatives do not
    MpReal e = reduced_log_energy(x, ws);
    CHECK((isinf(e) && e < 0));
    CHECK_THROWS_AS(reduced_gradient(x, ws), CoincidentPoints);
    CHECK_THROWS_AS(reduced_hessian(x, ws), CoincidentPoints);
}

TEST_CASE("maximum verification at the two-point stationary pair") {
    ScopedPrecision guard(192);
    WeightSpec ws = WeightSpec::classical();
    MpReal s = 1 / sqrt(MpReal(2));
    std::vector<MpReal> x{-s, s};
    MaximumVerdict v = verify_unique_maximum(ws, x, 100, 42);
    CHECK(v.trials == 100);
    CHECK(v.failures == 0);
    CHECK(v.seed == 42);
    CHECK(v.stationarity_max <= 1e-8);
    CHECK(v.hessian_max_eigenvalue == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(v.passed());

    CHECK_THROWS_AS(verify_unique_maximum(ws, x, 99, 42), ConfigError);
    CHECK_THROWS_AS(verify_unique_maximum(ws, {}, 100, 42), ConfigError);
}

TEST_CASE("zero perturbation scale waives strict decrease") {
    ScopedPrecision guard(192);
    WeightSpec ws = WeightSpec::classical();
    MpReal s = 1 / sqrt(MpReal(2));
    std::vector<MpReal> x{-s, s};
    MaximumVerdict v = verify_unique_maximum(ws, x, 100, 7, 0.0);
    CHECK(v.failures == 0);
    CHECK(v.passed());
}

TEST_CASE("on-axis factor equation residual") {
    // the full pipeline case: residual at rounding level at pole-free points
    Partition lambda = make_partition({1, 1});
    CaseData cs = build_case(lambda, 40, 192);
    for (double xv : {0.17, 1.03, -2.41}) {
        MpReal r = qn_ode_residual(lambda, 40, MpReal(xv), cs.zs, cs.hw, 192);
        CHECK(d(r) < 1e-12);
    }
    // the empty partition reduces to the classical second-order equation
    Partition none = make_partition({});
    CaseData classical = build_case(none, 6, 192);
    for (double xv : {0.3, -1.7}) {
        MpReal r = qn_ode_residual(none, 6, MpReal(xv), classical.zs, classical.hw, 192);
        CHECK(d(r) < 1e-10);
    }
    CHECK_THROWS_AS(qn_ode_residual(lambda, 40, MpReal(0.5), cs.zs, cs.hw, 32), ConfigError);
}

TEST_CASE("residual evaluation refuses points on top of an off-axis zero") {
    Partition lambda = make_partition({1, 1});
    CaseData cs = build_case(lambda, 5, 192);
    ScopedPrecision guard(256);
    // craft a zero list whose off-axis member nearly touches the real axis
    ZeroSet zs = cs.zs;
    zs.exceptional = {MpComplex(MpReal("0.5"), ldexp(MpReal(1), -140)),
                      MpComplex(MpReal("0.5"), -ldexp(MpReal(1), -140))};
    CHECK_THROWS_AS(qn_ode_residual(lambda, 5, MpReal("0.5"), zs, cs.hw, 192), PoleProximity);
}
