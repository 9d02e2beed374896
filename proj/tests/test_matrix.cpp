#include <doctest.h>

#include "xhermite/errors.hpp"
#include "xhermite/matrix.hpp"
#include "xhermite/mp.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

using namespace xh;

namespace {

// Deterministic 64-bit generator (splitmix64) so matrix property tests never
// depend on platform RNG details.
struct Splitmix {
    std::uint64_t s;
    explicit Splitmix(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

Mat random_symmetric(int dim, Splitmix& rng) {
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j <= i; ++j) {
            double v = 2 * rng.uniform() - 1;
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

// Characteristic polynomial coefficients of a double matrix by the
// Faddeev-LeVerrier recurrence carried out in arbitrary precision:
// p(t) = t^d + c[d-1] t^(d-1) + ... + c[0].
std::vector<MpReal> char_poly_coeffs(const Mat& a) {
    ScopedPrecision guard(256);
    const int d = a.rows;
    std::vector<MpReal> M(static_cast<size_t>(d) * d, MpReal(0)); // M = I
    for (int i = 0; i < d; ++i) M[static_cast<size_t>(i) * d + i] = 1;
    std::vector<MpReal> c(static_cast<size_t>(d) + 1, MpReal(0));
    c[static_cast<size_t>(d)] = 1;
    std::vector<MpReal> AM(static_cast<size_t>(d) * d, MpReal(0));
    for (int k = 1; k <= d; ++k) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                MpReal s = 0;
                for (int l = 0; l < d; ++l)
                    s += MpReal(a(i, l)) * M[static_cast<size_t>(l) * d + j];
                AM[static_cast<size_t>(i) * d + j] = s;
            }
        MpReal tr = 0;
        for (int i = 0; i < d; ++i) tr += AM[static_cast<size_t>(i) * d + i];
        MpReal ck = -tr / k;
        c[static_cast<size_t>(d - k)] = ck;
        M = AM;
        for (int i = 0; i < d; ++i) M[static_cast<size_t>(i) * d + i] += ck;
    }
    return c;
}

} // namespace

TEST_CASE("norms") {
    Mat m(1, 2);
    m(0, 0) = 3;
    m(0, 1) = 4;
    CHECK(frobenius_norm(m) == doctest::Approx(5.0));
    CHECK(max_abs(m) == doctest::Approx(4.0));
    CHECK(frobenius_norm(Mat(3, 3)) == 0.0);
}

TEST_CASE("eigenvalues of a hand-checked 2x2") {
    Mat m(2, 2);
    m(0, 0) = -3;
    m(0, 1) = 1;
    m(1, 0) = 1;
    m(1, 1) = -3;
    std::vector<double> e = symmetric_eigenvalues(m);
    REQUIRE(e.size() == 2);
    CHECK(e[0] == doctest::Approx(-4.0).epsilon(1e-13));
    CHECK(e[1] == doctest::Approx(-2.0).epsilon(1e-13));
}

TEST_CASE("eigenvalues of a diagonal matrix are its sorted diagonal") {
    Mat m(4, 4);
    m(0, 0) = 2;
    m(1, 1) = -7;
    m(2, 2) = 0.5;
    m(3, 3) = -7;
    std::vector<double> e = symmetric_eigenvalues(m);
    REQUIRE(e.size() == 4);
    CHECK(e[0] == doctest::Approx(-7.0));
    CHECK(e[1] == doctest::Approx(-7.0));
    CHECK(e[2] == doctest::Approx(0.5));
    CHECK(e[3] == doctest::Approx(2.0));
}

TEST_CASE("non-symmetric input is rejected") {
    Mat m(2, 3);
    CHECK_THROWS_AS(symmetric_eigenvalues(m), NotSymmetric);
    Mat a(2, 2);
    a(0, 1) = 1;
    a(1, 0) = 2;
    CHECK_THROWS_AS(symmetric_eigenvalues(a), NotSymmetric);
}

TEST_CASE("eigenvalues reproduce the characteristic polynomial") {
    // For each random symmetric matrix: rebuild prod (t - e_i) from the
    // computed eigenvalues and compare against the exact characteristic
    // coefficients from the Faddeev-LeVerrier recurrence.
    Splitmix rng(21);
    for (int trial = 0; trial < 6; ++trial) {
        int dim = 2 + trial % 5;
        Mat a = random_symmetric(dim, rng);
        std::vector<double> e = symmetric_eigenvalues(a);
        REQUIRE(static_cast<int>(e.size()) == dim);
        ScopedPrecision guard(256);
        std::vector<MpReal> from_eigs{MpReal(1)};
        for (double ev : e) {
            std::vector<MpReal> next(from_eigs.size() + 1, MpReal(0));
            for (size_t i = 0; i < from_eigs.size(); ++i) {
                next[i + 1] += from_eigs[i];
                next[i] -= MpReal(ev) * from_eigs[i];
            }
            from_eigs = std::move(next);
        }
        std::vector<MpReal> exact = char_poly_coeffs(a);
        double scale = 1;
        for (const auto& c : exact) scale = std::max(scale, std::fabs(c.convert_to<double>()));
        for (size_t k = 0; k < exact.size(); ++k) {
            double got = from_eigs[k].convert_to<double>();
            double want = exact[k].convert_to<double>();
            CHECK(std::fabs(got - want) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("eigenvalues are ascending and sum to the trace") {
    Splitmix rng(77);
    Mat a = random_symmetric(6, rng);
    std::vector<double> e = symmetric_eigenvalues(a);
    double tr = 0, sum = 0;
    for (int i = 0; i < 6; ++i) tr += a(i, i);
    for (size_t i = 0; i + 1 < e.size(); ++i) CHECK(e[i] <= e[i + 1]);
    for (double v : e) sum += v;
    CHECK(sum == doctest::Approx(tr).epsilon(1e-12));
}
