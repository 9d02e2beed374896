#include <doctest.h>

#include "xhermite/energy.hpp"
#include "xhermite/errors.hpp"
#include "xhermite/gersgorin.hpp"
#include "xhermite/matrix.hpp"
#include "xhermite/partition.hpp"
#include "xhermite/pipeline.hpp"
#include "xhermite/poly.hpp"
#include "xhermite/zeros.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

using namespace xh;

namespace {

double d(const MpReal& v) { return v.convert_to<double>(); }

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

// A conjugate-closed random configuration: one free off-axis pair plus
// distinct on-axis points, kept away from each other and from the poles.
Configuration random_config(Splitmix& rng) {
    Configuration cfg;
    double xi = 0.4 + rng.uniform();
    double eta = 0.4 + rng.uniform();
    cfg.xi = {MpReal(xi), MpReal(xi)};
    cfg.eta = {MpReal(eta), MpReal(-eta)};
    double base = -2.0;
    for (int i = 0; i < 3; ++i) {
        base += 0.7 + rng.uniform();
        cfg.x.push_back(MpReal(base));
    }
    return cfg;
}

// Raise every coordinate to the current default precision so gradient and
// energy evaluations run at full working precision.
Configuration at_precision(const Configuration& cfg) {
    Configuration out;
    for (const auto& v : cfg.xi) out.xi.push_back(MpReal(v) + 0);
    for (const auto& v : cfg.eta) out.eta.push_back(MpReal(v) + 0);
    for (const auto& v : cfg.x) out.x.push_back(MpReal(v) + 0);
    return out;
}

std::vector<MpReal> char_poly_coeffs(const Mat& a) {
    ScopedPrecision guard(256);
    const int dim = a.rows;
    std::vector<MpReal> M(static_cast<size_t>(dim) * dim, MpReal(0));
    for (int i = 0; i < dim; ++i) M[static_cast<size_t>(i) * dim + i] = 1;
    std::vector<MpReal> c(static_cast<size_t>(dim) + 1, MpReal(0));
    c[static_cast<size_t>(dim)] = 1;
    std::vector<MpReal> AM(static_cast<size_t>(dim) * dim, MpReal(0));
    for (int k = 1; k <= dim; ++k) {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                MpReal s = 0;
                for (int l = 0; l < dim; ++l)
                    s += MpReal(a(i, l)) * M[static_cast<size_t>(l) * dim + j];
                AM[static_cast<size_t>(i) * dim + j] = s;
            }
        MpReal tr = 0;
        for (int i = 0; i < dim; ++i) tr += AM[static_cast<size_t>(i) * dim + i];
        MpReal ck = -tr / k;
        c[static_cast<size_t>(dim - k)] = ck;
        M = AM;
        for (int i = 0; i < dim; ++i) M[static_cast<size_t>(i) * dim + i] += ck;
    }
    return c;
}

} // namespace

TEST_CASE("two-point energy under the plain weight has a closed form") {
    ScopedPrecision guard(192);
    HRoots trivial; // empty root list, lead 1: weight e^{-x^2}
    Configuration cfg;
    MpReal s = 1 / sqrt(MpReal(2));
    cfg.x = {-s, s};
    MpReal f = log_energy(cfg, trivial);
    // -x1^2 - x2^2 + 2 log|x1 - x2| = -1 + log 2
    MpReal expected = -1 + log(MpReal(2));
    CHECK(std::fabs(d(f - expected)) < 1e-50);
}

TEST_CASE("real energy equals the real part of the complex energy") {
    ScopedPrecision guard(192);
    Partition lambda = make_partition({1, 1});
    ExactPoly H = generalized_hermite(lambda);
    HRoots hw = all_roots(H, 192);
    Splitmix rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Configuration cfg = at_precision(random_config(rng));
        MpReal f = log_energy(cfg, hw);
        MpComplex fc = complex_log_energy(cfg, H);
        CHECK(std::fabs(d(f - fc.re)) < 1e-40);
    }
}

TEST_CASE("analytic gradient matches central differences") {
    ScopedPrecision guard(320);
    Partition lambda = make_partition({1, 1});
    HRoots hw = all_roots(generalized_hermite(lambda), 320);
    Splitmix rng(5);
    Configuration cfg = at_precision(random_config(rng));
    std::vector<MpReal> g = gradient(cfg, hw);
    const MpReal step("1e-10");
    auto coord = [&](Configuration& c, int idx) -> MpReal& {
        int m = c.m();
        if (idx < 2 * m) return (idx % 2 == 0) ? c.xi[idx / 2] : c.eta[idx / 2];
        return c.x[idx - 2 * m];
    };
    for (int idx = 0; idx < 2 * cfg.m() + cfg.n(); ++idx) {
        Configuration up = cfg, dn = cfg;
        coord(up, idx) += step;
        coord(dn, idx) -= step;
        MpReal fd = (log_energy(up, hw) - log_energy(dn, hw)) / (2 * step);
        double rel = std::fabs(d(fd - g[static_cast<size_t>(idx)])) /
                     std::max(1.0, std::fabs(d(g[static_cast<size_t>(idx)])));
        CHECK(rel < 1e-8);
    }
}

TEST_CASE("gradient vanishes at a computed zero configuration") {
    Partition lambda = make_partition({1, 1});
    CaseData cs = build_case(lambda, 5, 192);
    Configuration cfg = configuration_from(cs.zs);
    std::vector<MpReal> g = gradient(cfg, cs.hw);
    REQUIRE(g.size() == 9);
    for (const auto& v : g) CHECK(std::fabs(d(v)) < 1e-40);
}

TEST_CASE("configuration extraction keeps the pair layout") {
    Partition lambda = make_partition({1, 1});
    CaseData cs = build_case(lambda, 5, 192);
    Configuration cfg = configuration_from(cs.zs);
    CHECK(cfg.m() == 2);
    CHECK(cfg.n() == 5);
    CHECK(cfg.z(0).im == -cfg.z(1).im);
    CHECK(cfg.z(0).im > 0);
}

TEST_CASE("second derivatives match central differences of the gradient") {
    Partition lambda = make_partition({1, 1});
    CaseData cs = build_case(lambda, 5, 192);
    PartitionedHessian h = hessian(cs.zs, cs.hw);
    const int dim = h.dim();
    REQUIRE(dim == 9);

    ScopedPrecision guard(512);
    Configuration cfg = at_precision(configuration_from(cs.zs));
    const MpReal step("1e-10");
    auto coord = [&](Configuration& c, int idx) -> MpReal& {
        int m = c.m();
        if (idx < 2 * m) return (idx % 2 == 0) ? c.xi[idx / 2] : c.eta[idx / 2];
        return c.x[idx - 2 * m];
    };
    double max_abs_entry = max_abs(h.entries);
    for (int j = 0; j < dim; ++j) {
        Configuration up = cfg, dn = cfg;
        coord(up, j) += step;
        coord(dn, j) -= step;
        std::vector<MpReal> gu = gradient(up, cs.hw);
        std::vector<MpReal> gd = gradient(dn, cs.hw);
        for (int i = 0; i < dim; ++i) {
            double fd = d((gu[static_cast<size_t>(i)] - gd[static_cast<size_t>(i)]) / (2 * step));
            double have = h.entries(i, j);
            double denom = std::max(std::fabs(have), 1e-9 * std::max(1.0, max_abs_entry));
            CHECK(std::fabs(fd - have) / denom < 1e-6);
        }
    }
}

TEST_CASE("off-axis diagonal blocks are exactly trace-free and symmetric") {
    Partition lambda = make_partition({2, 2});
    CaseData cs = build_case(lambda, 6, 192);
    PartitionedHessian h = hessian(cs.zs, cs.hw);
    CHECK(h.m == 4);
    CHECK(h.n == 6);
    for (int k = 0; k < h.m; ++k) {
        CHECK(h.entries(2 * k, 2 * k) == -h.entries(2 * k + 1, 2 * k + 1));
        CHECK(h.entries(2 * k, 2 * k + 1) == h.entries(2 * k + 1, 2 * k));
    }
    for (int i = 0; i < h.dim(); ++i)
        for (int j = 0; j < h.dim(); ++j) CHECK(h.entries(i, j) == h.entries(j, i));
}

TEST_CASE("a real off-axis zero is rejected") {
    ZeroSet zs;
    zs.exceptional = {MpComplex(0.5, 0.0)};
    HRoots hw;
    CHECK_THROWS_AS(hessian(zs, hw), RealExceptionalZero);
}

TEST_CASE("energy evaluation guards against collisions and poles") {
    ScopedPrecision guard(192);
    HRoots trivial;
    Configuration twice;
    twice.x = {MpReal("0.5"), MpReal("0.5")};
    CHECK_THROWS_AS(log_energy(twice, trivial), CoincidentPoints);

    HRoots pole_at_zero;
    pole_at_zero.roots = {MpComplex(0.0, 0.0)};
    Configuration at_pole;
    at_pole.x = {MpReal(0)};
    CHECK_THROWS_AS(log_energy(at_pole, pole_at_zero), PointAtPoleOfW);
}

TEST_CASE("similarity scaling: exact round trip and preserved spectrum") {
    Partition lambda = make_partition({1, 1});
    CaseData cs = build_case(lambda, 2, 192);
    PartitionedHessian h = hessian(cs.zs, cs.hw);
    REQUIRE(h.dim() == 6);

    PartitionedHessian s = scaled_hessian(h, 4.0);
    CHECK(s.K == 4.0);
    PartitionedHessian back = unscaled(s);
    for (size_t i = 0; i < h.entries.a.size(); ++i) CHECK(back.entries.a[i] == h.entries.a[i]);

    // the similarity leaves the characteristic polynomial unchanged
    std::vector<MpReal> c0 = char_poly_coeffs(h.entries);
    std::vector<MpReal> c1 = char_poly_coeffs(s.entries);
    double scale = 1;
    for (const auto& c : c0) scale = std::max(scale, std::fabs(c.convert_to<double>()));
    for (size_t k = 0; k < c0.size(); ++k) {
        double want = c0[k].convert_to<double>();
        double got = c1[k].convert_to<double>();
        CHECK(std::fabs(got - want) <= 1e-12 * scale);
    }
    CHECK_THROWS_AS(scaled_hessian(h, 0.0), ConfigError);
    CHECK_THROWS_AS(scaled_hessian(h, -2.0), ConfigError);
}

TEST_CASE("scaling search: frozen outcomes across the two partitions") {
    Partition p11 = make_partition({1, 1});
    CaseData cs = build_case(p11, 30, 192);
    PartitionedHessian h = hessian(cs.zs, cs.hw);
    ScalingSearch ss = find_scaling_K(h);
    CHECK(ss.found);
    CHECK(ss.K == 4.0); // power-of-two stage
    for (double m : ss.margins) CHECK(m > 0);
    DominanceVerdict dv =
        is_strictly_block_diagonally_dominant(scaled_hessian(h, ss.K).entries,
                                              hessian_partition(h.m, h.n));
    CHECK(dv.dominant);

    Partition p22 = make_partition({2, 2});
    CaseData c30 = build_case(p22, 30, 192);
    ScalingSearch s30 = find_scaling_K(hessian(c30.zs, c30.hw));
    CHECK_FALSE(s30.found); // the feasibility window is empty at this size
    CHECK(s30.window_valid);
    CHECK(s30.K_low > s30.K_high);

    CaseData c50 = build_case(p22, 50, 192);
    ScalingSearch s50 = find_scaling_K(hessian(c50.zs, c50.hw));
    CHECK(s50.found);
    // no power of two fits the window; the geometric midpoint stage lands here
    CHECK(s50.K == doctest::Approx(8.81704).epsilon(1e-4));
}
