#include "svir/algebra.hpp"

#include <string>

namespace svir {

std::string BasisSymbol::str() const {
    switch (kind) {
        case Kind::C: return "C";
        case Kind::L: return "L(" + std::to_string(d / 2) + ")";
        case Kind::G:
            if (d % 2 == 0) return "G(" + std::to_string(d / 2) + ")";
            return "G(" + std::to_string(d) + "/2)";
    }
    return "?";
}

ParityClass parity_of(const Element& x) {
    if (x.is_zero()) return ParityClass::zero;
    bool has_even = false, has_odd = false;
    for (const auto& [s, c] : x.terms) {
        (void)c;
        (s.parity() == Parity::odd ? has_odd : has_even) = true;
    }
    if (has_even && has_odd) return ParityClass::mixed;
    return has_odd ? ParityClass::odd : ParityClass::even;
}

std::vector<std::pair<std::int64_t, Element>> degree_decompose(const Element& x) {
    std::map<std::int64_t, Element> parts;
    for (const auto& [s, c] : x.terms) parts[s.degree2()].add_term(s, c);
    std::vector<std::pair<std::int64_t, Element>> out;
    out.reserve(parts.size());
    for (auto& [d, e] : parts) out.emplace_back(d, std::move(e));
    return out;
}

Element bracket_basis(const AlgebraConfig& cfg, const BasisSymbol& a, const BasisSymbol& b) {
    validate_symbol(cfg, a);
    validate_symbol(cfg, b);

    Element out;
    if (a.kind == Kind::C || b.kind == Kind::C) return out;

    const std::int64_t da = a.d, db = b.d;
    if (a.kind == Kind::L && b.kind == Kind::L) {
        // (m - n) L_{m+n}; central (m^3 - m)/12 = (da^3 - 4 da)/96 at m+n=0
        out.add_term(BasisSymbol{Kind::L, da + db}, Scalar(make_rational(da - db, 2)));
        if (cfg.with_center && da + db == 0) {
            mpz_class t(da);
            t = t * t * t - 4 * da;
            out.add_term(BasisSymbol::C(), Scalar(make_rational(t, mpz_class(96))));
        }
    } else if (a.kind == Kind::L && b.kind == Kind::G) {
        // (m/2 - r) G_{m+r} = (da - 2 db)/4 G
        out.add_term(BasisSymbol{Kind::G, da + db}, Scalar(make_rational(da - 2 * db, 4)));
    } else if (a.kind == Kind::G && b.kind == Kind::L) {
        // super-skew of the previous case: (r - m/2) G_{r+m}
        out.add_term(BasisSymbol{Kind::G, da + db}, Scalar(make_rational(2 * da - db, 4)));
    } else {
        // [G_r, G_s] = 2 L_{r+s}; central (r^2 - 1/4)/3 = (da^2 - 1)/12 at r+s=0
        out.add_term(BasisSymbol{Kind::L, da + db}, Scalar(2));
        if (cfg.with_center && da + db == 0) {
            mpz_class t(da);
            t = t * t - 1;
            out.add_term(BasisSymbol::C(), Scalar(make_rational(t, mpz_class(12))));
        }
    }
    return out;
}

Element bracket(const AlgebraConfig& cfg, const Element& x, const Element& y) {
    Element out;
    for (const auto& [sa, ca] : x.terms)
        for (const auto& [sb, cb] : y.terms)
            out += bracket_basis(cfg, sa, sb).scaled(ca * cb);
    return out;
}

std::vector<BasisSymbol> symbols_in_radius(const AlgebraConfig& cfg, std::int64_t radius) {
    std::vector<BasisSymbol> out;
    for (std::int64_t d = -2 * radius; d <= 2 * radius; ++d) {
        if (d % 2 == 0) out.push_back(BasisSymbol{Kind::L, d});
        BasisSymbol g{Kind::G, d};
        if (symbol_valid(cfg, g)) out.push_back(g);
    }
    if (cfg.with_center) out.push_back(BasisSymbol::C());
    std::sort(out.begin(), out.end());
    return out;
}

JacobiReport jacobi_report(const AlgebraConfig& cfg, std::int64_t window_radius) {
    JacobiReport rep;
    auto syms = symbols_in_radius(cfg, window_radius);

    auto sign = [](Parity p, Parity q) {
        return (p == Parity::odd && q == Parity::odd) ? Scalar(-1) : Scalar(1);
    };

    for (const auto& x : syms)
        for (const auto& y : syms) {
            // super-skew: [x,y] + (-1)^{|x||y|} [y,x] = 0
            Element skew = bracket_basis(cfg, x, y) + bracket_basis(cfg, y, x).scaled(sign(x.parity(), y.parity()));
            if (!skew.is_zero()) rep.skew.push_back({x, y, skew});

            for (const auto& z : syms) {
                Element j =
                    bracket(cfg, Element::single(x), bracket_basis(cfg, y, z)).scaled(sign(x.parity(), z.parity())) +
                    bracket(cfg, Element::single(y), bracket_basis(cfg, z, x)).scaled(sign(y.parity(), x.parity())) +
                    bracket(cfg, Element::single(z), bracket_basis(cfg, x, y)).scaled(sign(z.parity(), y.parity()));
                if (!j.is_zero()) rep.jacobi.push_back({x, y, z, j});
            }
        }
    return rep;
}

} // namespace svir
