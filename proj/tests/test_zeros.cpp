#include <doctest.h>

#include "xhermite/errors.hpp"
#include "xhermite/partition.hpp"
#include "xhermite/poly.hpp"
#include "xhermite/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace xh;

namespace {

double d(const MpReal& v) { return v.convert_to<double>(); }

} // namespace

TEST_CASE("classical zeros: count, symmetry, ordering, residual") {
    std::vector<MpReal> z = classical_hermite_zeros(5, 192);
    REQUIRE(z.size() == 5);
    CHECK(std::is_sorted(z.begin(), z.end()));
    CHECK(z[2] == 0); // odd degree: middle zero exactly at the origin
    CHECK(z[0] == -z[4]);
    CHECK(z[1] == -z[3]);
    // frozen five-point values
    CHECK(d(z[4]) == doctest::Approx(2.0201828704560856).epsilon(1e-14));
    CHECK(d(z[3]) == doctest::Approx(0.9585724646138185).epsilon(1e-14));
    ExactPoly h5 = hermite(5);
    for (const auto& x : z) {
        EvalResult r = eval_extended(h5, x, 256);
        CHECK(abs(r.value).convert_to<double>() < 1e-50);
    }
    CHECK_THROWS_AS(classical_hermite_zeros(0, 192), ConfigError);
}

TEST_CASE("classical zeros agree with the generic solver") {
    std::vector<MpReal> z = classical_hermite_zeros(8, 192);
    HRoots r = all_roots(hermite(8), 192);
    REQUIRE(r.roots.size() == 8);
    std::vector<double> re;
    for (const auto& root : r.roots) {
        CHECK(std::fabs(d(root.im)) < 1e-50);
        re.push_back(d(root.re));
    }
    std::sort(re.begin(), re.end());
    for (size_t i = 0; i < 8; ++i) CHECK(std::fabs(re[i] - d(z[i])) < 1e-40);
}

TEST_CASE("generic solver on a cubic with one real and one conjugate pair") {
    // (x^2 + 1)(x - 2) = x^3 - 2x^2 + x - 2
    ExactPoly p({BigInt(-2), BigInt(1), BigInt(-2), BigInt(1)});
    HRoots r = all_roots(p, 192);
    REQUIRE(r.roots.size() == 3);
    int real_count = 0, pair_count = 0;
    for (const auto& z : r.roots) {
        if (z.im == 0) {
            ++real_count;
            CHECK(d(z.re) == doctest::Approx(2.0).epsilon(1e-40));
        } else {
            ++pair_count;
            CHECK(std::fabs(d(z.re)) < 1e-40);
            CHECK(std::fabs(std::fabs(d(z.im)) - 1.0) < 1e-40);
        }
    }
    CHECK(real_count == 1);
    CHECK(pair_count == 2);
    for (const auto& res : r.residual) CHECK(d(res) < 1e-40);
    CHECK(r.lead == 1);
}

TEST_CASE("generic solver: conjugate closure is exact") {
    ExactPoly p = exceptional_hermite(make_partition({1, 1}), 7);
    HRoots r = all_roots(p, 192);
    REQUIRE(r.roots.size() == 7);
    for (const auto& z : r.roots) {
        if (z.im == 0) continue;
        bool found = false;
        for (const auto& w : r.roots)
            if (w.re == z.re && w.im == -z.im) found = true;
        CHECK(found);
    }
}

TEST_CASE("generic solver rejects bad input") {
    CHECK_THROWS_AS(all_roots(ExactPoly(), 192), ConfigError);
    ExactPoly sq = ExactPoly({BigInt(-1), BigInt(1)}) * ExactPoly({BigInt(-1), BigInt(1)});
    CHECK_THROWS_AS(all_roots(sq, 192), NotSquarefree);
    ExactPoly p({BigInt(-2), BigInt(1), BigInt(-2), BigInt(1)});
    CHECK_THROWS_AS(all_roots(p, 192, {MpComplex(1.0, 0.0)}), ConfigError);
}

TEST_CASE("five on-axis zeros: frozen values and classification") {
    Partition lambda = make_partition({1, 1});
    ExactPoly p = exceptional_hermite(lambda, 7); // 5 on-axis + 1 conjugate pair
    HRoots roots = all_roots(p, 192);
    ZeroSet zs = classify_zeros(roots.roots, lambda, 5, default_tol_imag(192));

    REQUIRE(zs.regular.size() == 5);
    REQUIRE(zs.exceptional.size() == 2);
    CHECK(zs.degree == 7);
    CHECK(std::is_sorted(zs.regular.begin(), zs.regular.end()));
    CHECK(d(zs.regular[0]) == doctest::Approx(-1.9440334481042039).epsilon(1e-12));
    CHECK(d(zs.regular[1]) == doctest::Approx(-0.83987949242551008).epsilon(1e-12));
    CHECK(std::fabs(d(zs.regular[2])) < 1e-40);
    CHECK(d(zs.regular[3]) == doctest::Approx(0.83987949242551008).epsilon(1e-12));
    CHECK(d(zs.regular[4]) == doctest::Approx(1.9440334481042039).epsilon(1e-12));
    // conjugate pair on the imaginary axis, positive member first
    CHECK(d(zs.exceptional[0].im) == doctest::Approx(0.99230217632778217).epsilon(1e-12));
    CHECK(zs.exceptional[0].re == zs.exceptional[1].re);
    CHECK(zs.exceptional[0].im == -zs.exceptional[1].im);
    CHECK(zs.exceptional[0].im > 0);
    CHECK(std::fabs(d(zs.exceptional[0].re)) < 1e-40);
}

TEST_CASE("classification failures are reported as count mismatches") {
    Partition lambda = make_partition({1, 1});
    ExactPoly p = exceptional_hermite(lambda, 7);
    HRoots roots = all_roots(p, 192);
    // a huge imaginary tolerance snaps the conjugate pair onto the real axis
    CHECK_THROWS_AS(classify_zeros(roots.roots, lambda, 5, MpReal(10)), XhError);
    // wrong expected on-axis count
    CHECK_THROWS_AS(classify_zeros(roots.roots, lambda, 4, default_tol_imag(192)),
                    CountMismatch);
}

TEST_CASE("default classification tolerance is tiny but positive") {
    MpReal t = default_tol_imag(192);
    CHECK(t > 0);
    CHECK(d(t) < 1e-10);
}

TEST_CASE("pair deviation: frozen value at five on-axis zeros, shrinking in n") {
    Partition lambda = make_partition({1, 1});
    HRoots hw = all_roots(generalized_hermite(lambda), 192);

    ExactPoly p5 = exceptional_hermite(lambda, 7);
    ZeroSet zs5 = classify_zeros(all_roots(p5, 192).roots, lambda, 5, default_tol_imag(192));
    DeviationReport dev5 = exceptional_deviation(zs5, hw);
    REQUIRE(dev5.matched.size() == 2);
    CHECK(d(dev5.max_distance) == doctest::Approx(0.2851953951412347).epsilon(1e-12));
    CHECK(d(dev5.min_distance) == doctest::Approx(0.2851953951412347).epsilon(1e-12));
    // matched is a permutation of the zero indices
    std::vector<int> m = dev5.matched;
    std::sort(m.begin(), m.end());
    CHECK(m == std::vector<int>{0, 1});

    ExactPoly p15 = exceptional_hermite(lambda, 17);
    ZeroSet zs15 = classify_zeros(all_roots(p15, 192).roots, lambda, 15, default_tol_imag(192));
    DeviationReport dev15 = exceptional_deviation(zs15, hw);
    CHECK(dev15.max_distance < dev5.max_distance);
}

TEST_CASE("pair deviation error paths") {
    HRoots hw;
    hw.roots = {MpComplex(0.0, 0.0), MpComplex(100.0, 0.0)};
    ZeroSet zs;
    zs.exceptional = {MpComplex(0.0, 1.0), MpComplex(0.0, -1.005)};
    // both zeros sit within 1% of the same distance from the first pole
    CHECK_THROWS_AS(exceptional_deviation(zs, hw), MatchingAmbiguous);

    ZeroSet zs2;
    zs2.exceptional = {MpComplex(0.0, 0.0), MpComplex(3.0, 0.0)};
    // matching tolerates a zero sitting exactly on its pole (the deviation is
    // just 0), but the pair identity divides by that distance and refuses
    DeviationReport degenerate = exceptional_deviation(zs2, hw);
    CHECK(degenerate.min_distance == 0);
    CHECK_THROWS_AS(km_identity_residual(zs2, hw, 192), DegenerateDistance);

    ZeroSet zs3;
    zs3.exceptional = {MpComplex(0.0, 1.0)};
    CHECK_THROWS_AS(exceptional_deviation(zs3, hw), CountMismatch);
}

TEST_CASE("pair identity residual is at rounding level for true zeros") {
    Partition lambda = make_partition({1, 1});
    HRoots hw = all_roots(generalized_hermite(lambda), 192);
    ExactPoly p = exceptional_hermite(lambda, 7);
    ZeroSet zs = classify_zeros(all_roots(p, 192).roots, lambda, 5, default_tol_imag(192));
    IdentityResidual ir = km_identity_residual(zs, hw, 192);
    REQUIRE(ir.relative.size() == 2);
    for (const auto& r : ir.relative) CHECK(d(r) < 1e-40);
}

TEST_CASE("occupied-gap count") {
    std::vector<MpReal> classical{MpReal(-2), MpReal(-1), MpReal(0), MpReal(1), MpReal(2)};
    std::vector<MpReal> reg1{MpReal("-1.5"), MpReal("0.5"), MpReal("1.7")};
    CHECK(interlacing_report(reg1, classical, 0) == 3);
    // two zeros in one gap count that gap once
    std::vector<MpReal> reg2{MpReal("-1.5"), MpReal("-1.2"), MpReal("1.7")};
    CHECK(interlacing_report(reg2, classical, 0) == 2);
    // zeros outside the hull occupy nothing
    std::vector<MpReal> reg3{MpReal(-5), MpReal(5)};
    CHECK(interlacing_report(reg3, classical, 1) == 0);
    CHECK_THROWS_AS(interlacing_report(reg1, classical, -1), ConfigError);
}

TEST_CASE("inverse-distance scan") {
    std::vector<MpReal> reg{MpReal(0)};
    CHECK(d(inverse_distance_scan(MpReal(0), MpReal(1), reg)) == doctest::Approx(1.0));
    std::vector<MpReal> reg2{MpReal(1), MpReal(-1)};
    CHECK(d(inverse_distance_scan(MpReal(0), MpReal(1), reg2)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(inverse_distance_scan(MpReal(0), MpReal(0), reg), ConfigError);
}
