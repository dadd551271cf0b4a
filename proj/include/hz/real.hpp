#pragma once

// Arbitrary-precision real/complex scaffolding on top of MPFR via
// boost::multiprecision. Precision is a process-wide setting (set once from
// the CLI / env before computing); helpers below convert a bit count to the
// decimal-digit API boost exposes, always rounding up so the effective
// precision is at least the requested number of bits.

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace hz {

using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline unsigned digits10_for_bits(unsigned bits) {
    // 1 digit ~ log2(10) = 3.3219... bits; round up.
    return static_cast<unsigned>((static_cast<unsigned long long>(bits) * 100000ULL + 332192ULL) / 332193ULL) + 1u;
}

inline void set_precision_bits(unsigned bits) {
    Real::default_precision(digits10_for_bits(bits));
}

inline unsigned current_precision_bits() {
    Real probe(0);
    return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

inline Real to_real(const Rat& q) {
    Real num(numerator(q).str());
    Real den(denominator(q).str());
    return num / den;
}

inline Real real_pi() { return boost::math::constants::pi<Real>(); }

// minimal complex-over-Real; libmpc is not available, and only a handful of
// operations are needed (evaluation of q_Z^{-k}, DFT phases, Weil matrices).
struct Cplx {
    Real re, im;
    Cplx() : re(0), im(0) {}
    Cplx(Real r) : re(std::move(r)), im(0) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Cplx operator+(const Cplx& o) const { return {re + o.re, im + o.im}; }
    Cplx operator-(const Cplx& o) const { return {re - o.re, im - o.im}; }
    Cplx operator-() const { return {-re, -im}; }
    Cplx operator*(const Cplx& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Cplx operator*(const Real& s) const { return {re * s, im * s}; }
    Cplx& operator+=(const Cplx& o) { re += o.re; im += o.im; return *this; }
    Cplx& operator-=(const Cplx& o) { re -= o.re; im -= o.im; return *this; }

    Cplx conj() const { return {re, -im}; }
    Real abs2() const { return re * re + im * im; }

    Cplx inverse() const {
        Real d = abs2();
        return {re / d, -im / d};
    }
    Cplx operator/(const Cplx& o) const { return *this * o.inverse(); }
};

inline Cplx pow_int(const Cplx& z, long n) {
    if (n < 0) return pow_int(z.inverse(), -n);
    Cplx acc(Real(1));
    Cplx base = z;
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// e(x) = exp(2 pi i x)
inline Cplx unit_phase(const Real& x) {
    Real t = 2 * real_pi() * x;
    return {cos(t), sin(t)};
}

inline Real abs_c(const Cplx& z) { return sqrt(z.abs2()); }

}  // namespace hz
