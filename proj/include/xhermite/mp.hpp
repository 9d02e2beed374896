#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <utility>

namespace xh {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;
// Dynamic-precision real, without expression templates so results are always
// concrete values. Operation results take the max precision of their
// operands; fresh temporaries take the thread's current default precision.
using MpReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                             boost::multiprecision::et_off>;

inline unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(bits * 0.30103) + 3;
}

// RAII guard for MpReal's thread-local default precision, expressed in bits.
class ScopedPrecision {
public:
    explicit ScopedPrecision(unsigned bits)
        : saved_(MpReal::default_precision()) {
        MpReal::default_precision(bits_to_digits10(bits));
    }
    ~ScopedPrecision() { MpReal::default_precision(saved_); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
    unsigned saved_;
};

// Minimal arbitrary-precision complex value. Only the operations the energy
// and root-finding layers need; principal branch for log/arg.
struct MpComplex {
    MpReal re, im;

    MpComplex() : re(0), im(0) {}
    MpComplex(MpReal r, MpReal i) : re(std::move(r)), im(std::move(i)) {}
    explicit MpComplex(const MpReal& r) : re(r), im(0) {}
    explicit MpComplex(double r) : re(r), im(0) {}
    MpComplex(double r, double i) : re(r), im(i) {}

    MpComplex operator-() const { return {-re, -im}; }
    MpComplex operator+(const MpComplex& o) const { return {re + o.re, im + o.im}; }
    MpComplex operator-(const MpComplex& o) const { return {re - o.re, im - o.im}; }
    MpComplex operator*(const MpComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    MpComplex operator/(const MpComplex& o) const {
        MpReal d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
    MpComplex& operator+=(const MpComplex& o) { re += o.re; im += o.im; return *this; }
    MpComplex& operator-=(const MpComplex& o) { re -= o.re; im -= o.im; return *this; }
    MpComplex& operator*=(const MpComplex& o) { *this = *this * o; return *this; }

    MpComplex operator*(const MpReal& s) const { return {re * s, im * s}; }
    MpComplex operator/(const MpReal& s) const { return {re / s, im / s}; }

    bool operator==(const MpComplex& o) const { return re == o.re && im == o.im; }
};

inline MpReal norm(const MpComplex& z) { return z.re * z.re + z.im * z.im; }
inline MpReal abs(const MpComplex& z) { return sqrt(norm(z)); }
inline MpComplex conj(const MpComplex& z) { return {z.re, -z.im}; }
inline MpComplex inv(const MpComplex& z) {
    MpReal d = norm(z);
    return {z.re / d, -z.im / d};
}
inline MpReal arg(const MpComplex& z) { return atan2(z.im, z.re); }
inline MpComplex log(const MpComplex& z) {
    return {boost::multiprecision::log(abs(z)), arg(z)};
}

inline double to_double(const MpReal& x) { return x.convert_to<double>(); }

// Approximate significand width of a value, in bits.
inline unsigned precision_bits_of(const MpReal& x) {
    return static_cast<unsigned>(x.precision() * 3.3219280948873623) + 1;
}

} // namespace xh
