#include "svir/roots.hpp"

#include <algorithm>
#include <cmath>

namespace svir {

namespace {

struct Zi {
    mpz_class x, y;  // x + y i
    bool operator==(const Zi&) const = default;
};

Zi zi_mul(const Zi& a, const Zi& b) {
    return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x};
}

Zi zi_pow(Zi b, std::int64_t k) {
    Zi acc{1, 0};
    while (k > 0) {
        if (k & 1) acc = zi_mul(acc, b);
        b = zi_mul(b, b);
        k >>= 1;
    }
    return acc;
}

// value as m * 2^e with m in [0.5, 1); safe for huge integers
long double to_ld_2exp(const mpz_class& z, long& e) {
    double d = mpz_get_d_2exp(&e, z.get_mpz_t());
    return static_cast<long double>(d);
}

// All Gaussian-integer k-th roots of z (k >= 1).
std::vector<Zi> zi_kth_roots(const Zi& z, std::int64_t k) {
    if (z.x == 0 && z.y == 0) return {Zi{0, 0}};
    mpz_class n = z.x * z.x + z.y * z.y;
    mpz_class nr;
    if (mpz_root(nr.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k)) == 0)
        return {};  // |root|^2 would be irrational
    if (mpz_sizeinbase(nr.get_mpz_t(), 2) > 117)
        throw error("k-th root candidate magnitude exceeds supported range");

    long double mag = sqrtl(nr.get_d());
    long ex, ey;
    long double mx = to_ld_2exp(z.x, ex), my = to_ld_2exp(z.y, ey);
    long e = std::max(ex, ey);
    auto scaled = [&](long double m, long ee) -> long double {
        long diff = ee - e;
        if (diff < -120) return 0.0L;
        return ldexpl(m, static_cast<int>(diff));
    };
    long double theta = atan2l(scaled(my, ey), scaled(mx, ex));

    std::vector<Zi> out;
    const long double two_pi = 6.283185307179586476925286766559L;
    for (std::int64_t j = 0; j < k; ++j) {
        long double phi = (theta + two_pi * static_cast<long double>(j)) / static_cast<long double>(k);
        long double cx = mag * cosl(phi), cy = mag * sinl(phi);
        mpz_class rx(static_cast<long>(llroundl(cx))), ry(static_cast<long>(llroundl(cy)));
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy) {
                Zi cand{rx + dx, ry + dy};
                if (zi_pow(cand, k) == z && std::find(out.begin(), out.end(), cand) == out.end())
                    out.push_back(cand);
            }
    }
    return out;
}

} // namespace

std::vector<Scalar> kth_roots(const Scalar& q, std::int64_t k) {
    if (k < 1) throw error("kth_roots requires k >= 1");
    if (q.is_zero()) return {Scalar(0)};
    if (k == 1) return {q};

    // q = z/d with z Gaussian integer, d > 0; every root is beta/d with
    // beta^k = z * d^(k-1), since gcd considerations force the root's
    // denominator to divide d.
    mpz_class d = lcm(q.re.get_den(), q.im.get_den());
    Zi z{q.re.get_num() * (d / q.re.get_den()), q.im.get_num() * (d / q.im.get_den())};
    mpz_class dk;
    mpz_pow_ui(dk.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(k - 1));
    Zi target{z.x * dk, z.y * dk};

    std::vector<Scalar> out;
    for (const auto& beta : zi_kth_roots(target, k)) {
        Scalar root(make_rational(beta.x, d), make_rational(beta.y, d));
        // candidates are verified in Z[i] already; re-verify in Q(i) anyway
        if (int_pow(root, k) == q && std::find(out.begin(), out.end(), root) == out.end())
            out.push_back(root);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace svir
