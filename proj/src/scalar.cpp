#include "svir/scalar.hpp"

namespace svir {

Rational make_rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw division_by_zero();
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(long num, long den) {
    return make_rational(mpz_class(num), mpz_class(den));
}

Scalar Scalar::operator/(const Scalar& o) const {
    return *this * o.inv();
}

Scalar Scalar::inv() const {
    if (is_zero()) throw division_by_zero();
    Rational n = norm();
    return Scalar(re / n, -im / n);
}

Scalar int_pow(const Scalar& base, std::int64_t exponent) {
    if (exponent == 0) return Scalar(1);
    Scalar b = base;
    if (exponent < 0) {
        b = base.inv();  // throws on zero base
        exponent = -exponent;
    }
    Scalar acc(1);
    std::uint64_t e = static_cast<std::uint64_t>(exponent);
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

std::size_t scalar_bits(const Scalar& s) {
    auto bits = [](const Rational& q) {
        return mpz_sizeinbase(q.get_num().get_mpz_t(), 2) +
               mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
    };
    return bits(s.re) + bits(s.im);
}

} // namespace svir
