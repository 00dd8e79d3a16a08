#pragma once

#include <map>
#include <utility>
#include <vector>

#include "svir/basis.hpp"
#include "svir/scalar.hpp"

namespace svir {

enum class ParityClass : std::uint8_t { even, odd, mixed, zero };

/// A finitely supported vector of the algebra: BasisSymbol -> Scalar with no
/// explicit zeros. Equality is exact table equality; iteration order is the
/// canonical (kind, d) order, so printing is deterministic.
struct Element {
    std::map<BasisSymbol, Scalar> terms;

    Element() = default;

    static Element zero() { return {}; }
    static Element single(const BasisSymbol& s, Scalar c = Scalar(1)) {
        Element e;
        if (!c.is_zero()) e.terms.emplace(s, std::move(c));
        return e;
    }

    bool is_zero() const { return terms.empty(); }

    Scalar coeff(const BasisSymbol& s) const {
        auto it = terms.find(s);
        return it == terms.end() ? Scalar(0) : it->second;
    }

    void add_term(const BasisSymbol& s, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms.emplace(s, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    Element& operator+=(const Element& o) {
        for (const auto& [s, c] : o.terms) add_term(s, c);
        return *this;
    }
    Element& operator-=(const Element& o) {
        for (const auto& [s, c] : o.terms) add_term(s, -c);
        return *this;
    }
    Element operator+(const Element& o) const { Element r = *this; r += o; return r; }
    Element operator-(const Element& o) const { Element r = *this; r -= o; return r; }
    Element operator-() const { return Element::zero() - *this; }

    Element scaled(const Scalar& c) const {
        Element r;
        if (c.is_zero()) return r;
        for (const auto& [s, v] : terms) r.terms.emplace(s, v * c);
        return r;
    }

    bool operator==(const Element&) const = default;

    /// Largest |doubled degree| over the support; 0 for the zero element.
    std::int64_t max_abs_degree2() const {
        std::int64_t m = 0;
        for (const auto& [s, c] : terms) {
            (void)c;
            std::int64_t a = s.degree2() < 0 ? -s.degree2() : s.degree2();
            if (a > m) m = a;
        }
        return m;
    }
};

ParityClass parity_of(const Element& x);

/// Split into degree-homogeneous parts, doubled degrees strictly increasing.
/// The parts sum back to x; the zero element decomposes to an empty list.
std::vector<std::pair<std::int64_t, Element>> degree_decompose(const Element& x);

inline void validate_element(const AlgebraConfig& cfg, const Element& x) {
    for (const auto& [s, c] : x.terms) {
        (void)c;
        validate_symbol(cfg, s);
    }
}

} // namespace svir
