#pragma once

#include "xhermite/mp.hpp"
#include "xhermite/partition.hpp"

#include <string>
#include <vector>

namespace xh {

// Univariate polynomial with exact big-integer coefficients, ascending degree
// order. All arithmetic in this type is exact; no rounding ever occurs here.
struct ExactPoly {
    std::vector<BigInt> c; // empty vector = the zero polynomial

    ExactPoly() = default;
    explicit ExactPoly(std::vector<BigInt> coeffs) : c(std::move(coeffs)) { normalize(); }
    static ExactPoly constant(const BigInt& v) {
        ExactPoly p;
        if (v != 0) p.c = {v};
        return p;
    }

    // Degree; the zero polynomial reports the sentinel -1.
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const BigInt& lead() const { return c.back(); }
    BigInt coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : BigInt(0);
    }
    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool operator==(const ExactPoly& o) const { return c == o.c; }
};

ExactPoly operator+(const ExactPoly& a, const ExactPoly& b);
ExactPoly operator-(const ExactPoly& a, const ExactPoly& b);
ExactPoly operator*(const ExactPoly& a, const ExactPoly& b);
ExactPoly operator*(const ExactPoly& a, const BigInt& s);
ExactPoly operator-(const ExactPoly& a);

// Exact formal derivative of the given order (order ≥ 0).
ExactPoly derivative(const ExactPoly& p, int order = 1);

// Physicists' normalization: H_{k+1} = 2x·H_k - 2k·H_{k-1}, leading coeff 2^k.
ExactPoly hermite(int k);

// Determinant of the matrix whose (i,j) entry is the i-th derivative of ps[j].
// Cofactor expansion up to 5x5, fraction-free elimination beyond. The empty
// list yields the constant 1.
ExactPoly wronskian(const std::vector<ExactPoly>& ps);

// Wronskian of the shifted classical family selected by the partition;
// degree must come out equal to the partition size.
ExactPoly generalized_hermite(const Partition& lambda);

// One more row extends the family to the degree-n member; n must be an
// admissible degree for the partition.
ExactPoly exceptional_hermite(const Partition& lambda, int n);

// Exact quotient; throws DegreeMismatch if the division leaves a remainder.
ExactPoly divexact(const ExactPoly& a, const ExactPoly& b);

// GCD over the integers via the primitive polynomial remainder sequence;
// result is primitive with positive leading coefficient.
ExactPoly poly_gcd(ExactPoly a, ExactPoly b);

// True iff gcd(p, p') is constant.
bool is_squarefree(const ExactPoly& p);

struct EvalResult {
    MpComplex value;
    MpReal bound; // running rounding-error bound on |value|
};

// Horner evaluation in binary floating point of the given precision
// (default: max(128, 2x the bit length of the largest coefficient)).
EvalResult eval_extended(const ExactPoly& p, const MpComplex& z, unsigned precision_bits = 0);
EvalResult eval_extended(const ExactPoly& p, const MpReal& x, unsigned precision_bits = 0);

// Left-hand side of the self-adjoint-form identity the construction must
// satisfy, cleared of denominators:
//   G·P'' + (-2x·G - 2G')·P' + (G'' + 2x·G' + 2(n - size)·G)·P
// with G the partition's denominator polynomial and P the degree-n member.
// Identically zero iff the construction is correct.
ExactPoly exceptional_ode_lhs(const Partition& lambda, int n);

// H_k'' - 2x·H_k' + 2k·H_k; identically zero for the classical family.
ExactPoly hermite_ode_lhs(int k);

// Decimal-string serialization (ascending), wide enough for any coefficient.
std::vector<std::string> coeffs_decimal(const ExactPoly& p);
ExactPoly poly_from_decimal(const std::vector<std::string>& coeffs);

} // namespace xh
