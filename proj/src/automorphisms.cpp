#include "svir/automorphisms.hpp"

#include "svir/algebra.hpp"

namespace svir {

void validate_params(const AlgebraConfig& cfg, const AutParams& p) {
    if (p.eps != 1 && p.eps != -1) throw error("aut params: eps must be +1 or -1");
    if (p.a.is_zero()) throw error("aut params: a must be nonzero");
    if (p.s * p.s != Scalar(p.eps)) throw error("aut params: s^2 != eps");
    if (cfg.eps2 == 1) {
        if (!p.h) throw error("aut params: h is required on the half-integer grid");
        if (*p.h * *p.h != p.a) throw error("aut params: h^2 != a");
    } else if (p.h) {
        throw error("aut params: h is only meaningful on the half-integer grid");
    }
}

AutParams identity_params(const AlgebraConfig& cfg) {
    AutParams p;
    if (cfg.eps2 == 1) p.h = Scalar(1);
    return p;
}

AutParams grading_involution_params(const AlgebraConfig& cfg) {
    AutParams p;
    if (cfg.eps2 == 1) {
        p.h = Scalar(-1);  // s h^{2r} = -1 at half-integer r
    } else {
        p.s = Scalar(-1);
    }
    return p;
}

AutParams canonicalize(const AlgebraConfig& cfg, AutParams p) {
    if (cfg.eps2 == 1 && p.h) {
        bool canonical = p.s == Scalar(1) || p.s == Scalar::i();
        if (!canonical) {
            p.s = -p.s;
            p.h = -*p.h;
        }
    }
    return p;
}

namespace {

// a^(d/2) on the integer grid, h^d on the half-integer grid
Scalar half_power(const AlgebraConfig& cfg, const AutParams& p, std::int64_t d) {
    if (cfg.eps2 == 0) return int_pow(p.a, d / 2);
    return int_pow(*p.h, d);
}

} // namespace

Element apply_aut(const AlgebraConfig& cfg, const AutParams& p, const Element& x) {
    validate_params(cfg, p);
    validate_element(cfg, x);
    Element out;
    for (const auto& [sym, c] : x.terms) {
        switch (sym.kind) {
            case Kind::L:
                out.add_term(BasisSymbol{Kind::L, p.eps * sym.d},
                             c * Scalar(p.eps) * half_power(cfg, p, sym.d));
                break;
            case Kind::G:
                out.add_term(BasisSymbol{Kind::G, p.eps * sym.d},
                             c * p.s * half_power(cfg, p, sym.d));
                break;
            case Kind::C:
                out.add_term(BasisSymbol::C(), c * Scalar(p.eps));
                break;
        }
    }
    return out;
}

AutParams compose(const AlgebraConfig& cfg, const AutParams& p1, const AutParams& p2) {
    validate_params(cfg, p1);
    validate_params(cfg, p2);
    AutParams out;
    out.eps = p1.eps * p2.eps;
    out.a = p2.a * int_pow(p1.a, p2.eps);
    out.s = p1.s * p2.s;
    if (p1.h && p2.h) out.h = *p2.h * int_pow(*p1.h, p2.eps);
    return canonicalize(cfg, out);
}

AutParams invert(const AlgebraConfig& cfg, const AutParams& p) {
    validate_params(cfg, p);
    AutParams out;
    out.eps = p.eps;
    out.a = int_pow(p.a, -p.eps);
    out.s = p.s * Scalar(p.eps);
    if (p.h) out.h = int_pow(*p.h, -p.eps);
    return canonicalize(cfg, out);
}

MapTable aut_table(const AlgebraConfig& cfg, const AutParams& p, std::int64_t radius) {
    std::vector<std::pair<Element, Element>> entries;
    for (const auto& s : symbols_in_radius(cfg, radius))
        entries.emplace_back(Element::single(s), apply_aut(cfg, p, Element::single(s)));
    return MapTable(cfg, std::move(entries));
}

MapTable grading_involution_table(const AlgebraConfig& cfg, std::int64_t radius) {
    std::vector<std::pair<Element, Element>> entries;
    for (const auto& s : symbols_in_radius(cfg, radius)) {
        Scalar c = s.parity() == Parity::odd ? Scalar(-1) : Scalar(1);
        entries.emplace_back(Element::single(s), Element::single(s, c));
    }
    return MapTable(cfg, std::move(entries), Parity::even);
}

AutCheckResult is_automorphism_table(const MapTable& t, std::int64_t check_radius) {
    AutCheckResult res;
    auto syms = symbols_in_radius(t.cfg, check_radius);
    for (const auto& x : syms)
        for (const auto& y : syms) {
            Element lhs = t.apply(bracket_basis(t.cfg, x, y));
            Element rhs = bracket(t.cfg, t.apply(Element::single(x)), t.apply(Element::single(y)));
            if (lhs != rhs) {
                res.ok = false;
                res.x = x;
                res.y = y;
                res.lhs = lhs;
                res.rhs = rhs;
                return res;
            }
        }
    return res;
}

} // namespace svir
