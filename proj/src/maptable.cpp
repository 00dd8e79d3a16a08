#include "svir/maptable.hpp"

#include <set>

#include "svir/algebra.hpp"

namespace svir {

MapTable::MapTable(AlgebraConfig c, std::vector<std::pair<Element, Element>> es,
                   std::optional<Parity> parity)
    : cfg(c), entries(std::move(es)), declared_parity(parity) {
    std::set<BasisSymbol> support;
    for (const auto& [in, out] : entries) {
        validate_element(cfg, in);
        validate_element(cfg, out);
        if (in.is_zero()) throw error("map table input is the zero element");
        for (const auto& [s, coef] : in.terms) {
            (void)coef;
            support.insert(s);
        }
    }
    Window w = Window::from_set(cfg, support);
    Matrix m(entries.size(), w.size());
    for (std::size_t r = 0; r < entries.size(); ++r) {
        auto v = w.coords(entries[r].first);
        for (std::size_t cidx = 0; cidx < w.size(); ++cidx) m.at(r, cidx) = v[cidx];
    }
    if (rref(m).rank != entries.size())
        throw error("map table inputs are linearly dependent");

    if (declared_parity) {
        for (const auto& [in, out] : entries) {
            ParityClass pin = parity_of(in);
            if (pin == ParityClass::mixed || pin == ParityClass::zero) continue;
            ParityClass pout = parity_of(out);
            if (pout == ParityClass::zero) continue;
            bool shift = *declared_parity == Parity::odd;
            ParityClass expect =
                (pin == ParityClass::even) == !shift ? ParityClass::even : ParityClass::odd;
            if (pout != expect)
                throw error("map table output parity contradicts declared parity");
        }
    }
}

Window MapTable::inputs_window() const {
    std::set<BasisSymbol> support;
    for (const auto& [in, out] : entries) {
        (void)out;
        for (const auto& [s, coef] : in.terms) {
            (void)coef;
            support.insert(s);
        }
    }
    return Window::from_set(cfg, support);
}

Element MapTable::apply(const Element& x) const {
    if (x.is_zero()) return Element::zero();
    // fast path: every input is a single basis symbol
    bool all_single = true;
    for (const auto& [in, out] : entries) {
        (void)out;
        if (in.terms.size() != 1 || !in.terms.begin()->second.is_one()) {
            all_single = false;
            break;
        }
    }
    if (all_single) {
        std::map<BasisSymbol, const Element*> lut;
        for (const auto& [in, out] : entries) lut[in.terms.begin()->first] = &out;
        Element acc;
        for (const auto& [s, c] : x.terms) {
            auto it = lut.find(s);
            if (it == lut.end()) throw domain_insufficiency(s.str());
            acc += it->second->scaled(c);
        }
        return acc;
    }
    Window w = inputs_window();
    std::vector<Scalar> target;
    try {
        target = w.coords(x);
    } catch (const out_of_window&) {
        throw domain_insufficiency("element outside the span of the table inputs");
    }
    Matrix m(w.size(), entries.size());
    for (std::size_t c = 0; c < entries.size(); ++c) {
        auto v = w.coords(entries[c].first);
        for (std::size_t r = 0; r < w.size(); ++r) m.at(r, c) = v[r];
    }
    SolveResult sol = solve(m, target);
    if (sol.status == SolveResult::Status::none)
        throw domain_insufficiency("element outside the span of the table inputs");
    Element acc;
    for (std::size_t j = 0; j < entries.size(); ++j) acc += entries[j].second.scaled(sol.particular[j]);
    return acc;
}

std::optional<Element> MapTable::lookup(const Element& x) const {
    for (const auto& [in, out] : entries)
        if (in == x) return out;
    return std::nullopt;
}

bool MapTable::has_basis_input(const BasisSymbol& s) const {
    for (const auto& [in, out] : entries) {
        (void)out;
        if (in.terms.size() == 1 && in.terms.begin()->first == s && in.terms.begin()->second.is_one())
            return true;
    }
    return false;
}

std::pair<MapTable, MapTable> MapTable::parity_split() const {
    std::vector<std::pair<Element, Element>> even_entries, odd_entries;
    for (const auto& [in, out] : entries) {
        ParityClass pin = parity_of(in);
        if (pin == ParityClass::mixed)
            throw error("parity_split requires parity-homogeneous inputs");
        Element out_same, out_flip;
        for (const auto& [s, c] : out.terms)
            ((s.parity() == Parity::odd) == (pin == ParityClass::odd) ? out_same : out_flip)
                .add_term(s, c);
        even_entries.emplace_back(in, out_same);  // parity-preserving part
        odd_entries.emplace_back(in, out_flip);   // parity-shifting part
    }
    return {MapTable(cfg, std::move(even_entries), Parity::even),
            MapTable(cfg, std::move(odd_entries), Parity::odd)};
}

MapTable ad_table(const AlgebraConfig& cfg, const Element& x, std::int64_t radius) {
    std::vector<std::pair<Element, Element>> entries;
    for (const auto& s : symbols_in_radius(cfg, radius))
        entries.emplace_back(Element::single(s), bracket(cfg, x, Element::single(s)));
    return MapTable(cfg, std::move(entries));
}

} // namespace svir
