#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "svir/errors.hpp"

namespace svir {

using Rational = mpq_class;

/// Make a canonical rational p/q (lowest terms, positive denominator).
Rational make_rational(const mpz_class& num, const mpz_class& den);
Rational make_rational(long num, long den = 1);

/// A Gaussian rational a + b*i: the base field for every computation.
/// Components are always reduced; equality is structural. Immutable in
/// spirit - all operations return fresh values.
struct Scalar {
    Rational re;
    Rational im;

    Scalar() : re(0), im(0) {}
    Scalar(long v) : re(v), im(0) {}  // NOLINT: implicit by design
    Scalar(Rational r) : re(std::move(r)), im(0) {}
    Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    Scalar conj() const { return Scalar(re, -im); }
    /// re^2 + im^2 (the field norm down to Q).
    Rational norm() const { return re * re + im * im; }

    Scalar operator-() const { return Scalar(-re, -im); }
    Scalar operator+(const Scalar& o) const { return Scalar(re + o.re, im + o.im); }
    Scalar operator-(const Scalar& o) const { return Scalar(re - o.re, im - o.im); }
    Scalar operator*(const Scalar& o) const {
        return Scalar(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    Scalar operator/(const Scalar& o) const;
    Scalar inv() const;

    Scalar& operator+=(const Scalar& o) { re += o.re; im += o.im; return *this; }
    Scalar& operator-=(const Scalar& o) { re -= o.re; im -= o.im; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    bool operator==(const Scalar& o) const { return re == o.re && im == o.im; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    /// Lexicographic on (re, im); used only for deterministic ordering.
    bool operator<(const Scalar& o) const {
        if (re != o.re) return re < o.re;
        return im < o.im;
    }
};

/// Exact integer power. int_pow(b, 0) == 1 for every b (empty product);
/// negative exponents require b != 0.
Scalar int_pow(const Scalar& base, std::int64_t exponent);

/// Rough size measure (numerator+denominator bit counts) used for pivot
/// selection in the row reducer.
std::size_t scalar_bits(const Scalar& s);

} // namespace svir
