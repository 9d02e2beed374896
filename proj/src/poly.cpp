#include "xhermite/poly.hpp"

#include "xhermite/errors.hpp"

#include <algorithm>
#include <utility>

namespace xh {

ExactPoly operator+(const ExactPoly& a, const ExactPoly& b) {
    ExactPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), BigInt(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.normalize();
    return r;
}

ExactPoly operator-(const ExactPoly& a, const ExactPoly& b) {
    ExactPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), BigInt(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.normalize();
    return r;
}

ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    ExactPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.normalize();
    return r;
}

ExactPoly operator*(const ExactPoly& a, const BigInt& s) {
    if (s == 0) return {};
    ExactPoly r = a;
    for (auto& v : r.c) v *= s;
    return r;
}

ExactPoly operator-(const ExactPoly& a) { return a * BigInt(-1); }

ExactPoly derivative(const ExactPoly& p, int order) {
    ExactPoly r = p;
    for (int o = 0; o < order; ++o) {
        if (r.c.size() <= 1) return {};
        for (size_t i = 1; i < r.c.size(); ++i) r.c[i - 1] = r.c[i] * BigInt(i);
        r.c.pop_back();
    }
    return r;
}

ExactPoly hermite(int k) {
    static std::vector<ExactPoly> cache; // sequential execution throughout
    if (cache.empty()) {
        cache.push_back(ExactPoly::constant(1));
        cache.push_back(ExactPoly({BigInt(0), BigInt(2)}));
    }
    while (static_cast<int>(cache.size()) <= k) {
        const int m = static_cast<int>(cache.size()) - 1; // have H_m, build H_{m+1}
        const ExactPoly& hm = cache[m];
        ExactPoly next;
        next.c.assign(hm.c.size() + 1, BigInt(0));
        for (size_t i = 0; i < hm.c.size(); ++i) next.c[i + 1] = hm.c[i] * 2;
        const ExactPoly& hp = cache[m - 1];
        for (size_t i = 0; i < hp.c.size(); ++i) next.c[i] -= hp.c[i] * BigInt(2 * m);
        next.normalize();
        cache.push_back(std::move(next));
    }
    return cache[k];
}

namespace {

ExactPoly det_cofactor(const std::vector<std::vector<ExactPoly>>& m,
                       const std::vector<int>& cols, int row) {
    const int n = static_cast<int>(cols.size());
    if (n == 1) return m[row][cols[0]];
    ExactPoly acc;
    for (int t = 0; t < n; ++t) {
        if (m[row][cols[t]].is_zero()) continue;
        std::vector<int> sub;
        sub.reserve(n - 1);
        for (int u = 0; u < n; ++u)
            if (u != t) sub.push_back(cols[u]);
        ExactPoly term = m[row][cols[t]] * det_cofactor(m, sub, row + 1);
        acc = (t % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

ExactPoly det_bareiss(std::vector<std::vector<ExactPoly>> m) {
    const int n = static_cast<int>(m.size());
    ExactPoly prev = ExactPoly::constant(1);
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) return {};
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m[i][j] = divexact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = {};
        }
        prev = m[k][k];
    }
    ExactPoly d = m[n - 1][n - 1];
    return sign > 0 ? d : -d;
}

} // namespace

ExactPoly wronskian(const std::vector<ExactPoly>& ps) {
    const int n = static_cast<int>(ps.size());
    if (n == 0) return ExactPoly::constant(1);
    std::vector<std::vector<ExactPoly>> m(n, std::vector<ExactPoly>(n));
    for (int j = 0; j < n; ++j) {
        m[0][j] = ps[j];
        for (int i = 1; i < n; ++i) m[i][j] = derivative(m[i - 1][j]);
    }
    if (n <= 5) {
        std::vector<int> cols(n);
        for (int j = 0; j < n; ++j) cols[j] = j;
        return det_cofactor(m, cols, 0);
    }
    return det_bareiss(std::move(m));
}

ExactPoly generalized_hermite(const Partition& lambda) {
    const int r = lambda.length;
    std::vector<ExactPoly> ps;
    ps.reserve(r);
    for (int j = 0; j < r; ++j) ps.push_back(hermite(lambda.parts[r - 1 - j] + j));
    ExactPoly g = wronskian(ps);
    if (g.degree() != lambda.size)
        throw DegreeMismatch("denominator polynomial has degree " + std::to_string(g.degree()) +
                             ", expected " + std::to_string(lambda.size));
    return g;
}

ExactPoly exceptional_hermite(const Partition& lambda, int n) {
    if (!is_admissible_degree(lambda, n))
        throw InadmissibleDegree("degree " + std::to_string(n) +
                                 " is not in the degree set of the partition");
    const int r = lambda.length;
    std::vector<ExactPoly> ps;
    ps.reserve(r + 1);
    for (int j = 0; j < r; ++j) ps.push_back(hermite(lambda.parts[r - 1 - j] + j));
    ps.push_back(hermite(n - lambda.size + r));
    ExactPoly p = wronskian(ps);
    if (p.degree() != n)
        throw DegreeMismatch("constructed polynomial has degree " + std::to_string(p.degree()) +
                             ", expected " + std::to_string(n));
    return p;
}

ExactPoly divexact(const ExactPoly& a, const ExactPoly& b) {
    if (b.is_zero()) throw DegreeMismatch("division by the zero polynomial");
    if (a.is_zero()) return {};
    if (a.degree() < b.degree()) throw DegreeMismatch("inexact polynomial division");
    ExactPoly rem = a;
    ExactPoly q;
    q.c.assign(a.degree() - b.degree() + 1, BigInt(0));
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        const BigInt num = rem.coeff(k + b.degree());
        if (num == 0) continue;
        if (num % b.lead() != 0) throw DegreeMismatch("inexact polynomial division");
        const BigInt f = num / b.lead();
        q.c[k] = f;
        for (int i = 0; i <= b.degree(); ++i) rem.c[k + i] -= f * b.c[i];
    }
    rem.normalize();
    if (!rem.is_zero()) throw DegreeMismatch("inexact polynomial division");
    q.normalize();
    return q;
}

namespace {

BigInt content(const ExactPoly& p) {
    BigInt g = 0;
    for (const auto& v : p.c) g = boost::multiprecision::gcd(g, v);
    return g;
}

ExactPoly primitive_part(const ExactPoly& p) {
    if (p.is_zero()) return {};
    BigInt g = content(p);
    if (p.lead() < 0) g = -g;
    ExactPoly r = p;
    for (auto& v : r.c) v /= g;
    return r;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a reduced modulo b.
ExactPoly prem(ExactPoly a, const ExactPoly& b) {
    const int db = b.degree();
    while (!a.is_zero() && a.degree() >= db) {
        const int k = a.degree() - db;
        const BigInt f = a.lead();
        for (auto& v : a.c) v *= b.lead();
        for (int i = 0; i <= db; ++i) a.c[k + i] -= f * b.c[i];
        a.normalize();
    }
    return a;
}

} // namespace

ExactPoly poly_gcd(ExactPoly a, ExactPoly b) {
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        ExactPoly r = primitive_part(prem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool is_squarefree(const ExactPoly& p) {
    if (p.degree() <= 1) return true;
    return poly_gcd(p, derivative(p)).degree() == 0;
}

namespace {

unsigned default_eval_bits(const ExactPoly& p) {
    size_t maxbits = 0;
    for (const auto& v : p.c) {
        const BigInt a = boost::multiprecision::abs(v);
        if (a != 0) maxbits = std::max(maxbits, boost::multiprecision::msb(a) + size_t(1));
    }
    return std::max<unsigned>(128, static_cast<unsigned>(2 * maxbits));
}

} // namespace

EvalResult eval_extended(const ExactPoly& p, const MpComplex& z, unsigned precision_bits) {
    if (precision_bits == 0) precision_bits = default_eval_bits(p);
    ScopedPrecision guard(precision_bits);
    MpReal eps = ldexp(MpReal(1), -static_cast<long>(precision_bits) + 1);
    if (p.is_zero()) return {MpComplex(MpReal(0), MpReal(0)), MpReal(0)};
    MpComplex s(MpReal(0), MpReal(0));
    MpReal err = 0;
    const MpReal az = abs(z);
    for (int k = p.degree(); k >= 0; --k) {
        s = s * z + MpComplex(MpReal(p.c[k]), MpReal(0));
        // one complex multiply + add per step: a conservative per-step charge
        err = err * az + eps * (abs(s) * 4 + az);
    }
    return {s, err};
}

EvalResult eval_extended(const ExactPoly& p, const MpReal& x, unsigned precision_bits) {
    return eval_extended(p, MpComplex(x, MpReal(0)), precision_bits);
}

ExactPoly exceptional_ode_lhs(const Partition& lambda, int n) {
    const ExactPoly g = generalized_hermite(lambda);
    const ExactPoly p = exceptional_hermite(lambda, n);
    const ExactPoly g1 = derivative(g), g2 = derivative(g, 2);
    const ExactPoly p1 = derivative(p), p2 = derivative(p, 2);
    const ExactPoly x({BigInt(0), BigInt(1)});
    const ExactPoly a1 = -(x * g * BigInt(2)) - g1 * BigInt(2);
    const ExactPoly a0 = g2 + x * g1 * BigInt(2) + g * BigInt(2 * (n - lambda.size));
    return g * p2 + a1 * p1 + a0 * p;
}

ExactPoly hermite_ode_lhs(int k) {
    const ExactPoly h = hermite(k);
    const ExactPoly x({BigInt(0), BigInt(1)});
    return derivative(h, 2) - x * derivative(h) * BigInt(2) + h * BigInt(2 * k);
}

std::vector<std::string> coeffs_decimal(const ExactPoly& p) {
    std::vector<std::string> out;
    out.reserve(p.c.size());
    for (const auto& v : p.c) out.push_back(v.str());
    return out;
}

ExactPoly poly_from_decimal(const std::vector<std::string>& coeffs) {
    std::vector<BigInt> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) c.emplace_back(s);
    return ExactPoly(std::move(c));
}

} // namespace xh
