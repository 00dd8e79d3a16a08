#include "svir/derivations.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "svir/algebra.hpp"

namespace svir {

Matrix ad_matrix(const AlgebraConfig& cfg, const Element& x, const Window& ansatz,
                 const Window& target) {
    validate_element(cfg, x);
    Matrix m(target.size(), ansatz.size());
    std::set<BasisSymbol> escaped;
    for (std::size_t c = 0; c < ansatz.size(); ++c) {
        Element img = bracket(cfg, Element::single(ansatz.symbols[c]), x);
        for (const auto& [s, coef] : img.terms) {
            auto it = target.index.find(s);
            if (it == target.index.end())
                escaped.insert(s);
            else
                m.at(it->second, c) = coef;
        }
    }
    if (!escaped.empty()) {
        std::string names;
        for (const auto& s : escaped) names += (names.empty() ? "" : ", ") + s.str();
        throw window_escape(names);
    }
    return m;
}

Window reachable_target(const AlgebraConfig& cfg, const std::vector<Element>& probes,
                        const Window& ansatz, const std::vector<BasisSymbol>& extra) {
    std::set<BasisSymbol> support(extra.begin(), extra.end());
    for (const auto& p : probes)
        for (const auto& sym : ansatz.symbols) {
            Element img = bracket(cfg, Element::single(sym), p);
            for (const auto& [s, c] : img.terms) {
                (void)c;
                support.insert(s);
            }
        }
    return Window::from_set(cfg, support);
}

namespace {

Scalar leibniz_sign(Parity dp, Parity xp) {
    return (dp == Parity::odd && xp == Parity::odd) ? Scalar(-1) : Scalar(1);
}

void leibniz_homogeneous(const MapTable& d, std::int64_t radius,
                         std::vector<LeibnizViolation>& out) {
    const Parity dp = *d.declared_parity;
    auto syms = symbols_in_radius(d.cfg, radius);

    std::set<BasisSymbol> missing;
    auto need = [&](const BasisSymbol& s) {
        if (!d.has_basis_input(s)) missing.insert(s);
    };
    for (const auto& x : syms)
        for (const auto& y : syms) {
            need(x);
            need(y);
            for (const auto& [s, c] : bracket_basis(d.cfg, x, y).terms) {
                (void)c;
                need(s);
            }
        }
    if (!missing.empty()) {
        std::string names;
        for (const auto& s : missing) names += (names.empty() ? "" : ", ") + s.str();
        throw domain_insufficiency(names);
    }

    for (const auto& x : syms)
        for (const auto& y : syms) {
            Element lhs = d.apply(bracket_basis(d.cfg, x, y));
            Element rhs = bracket(d.cfg, d.apply(Element::single(x)), Element::single(y)) +
                          bracket(d.cfg, Element::single(x), d.apply(Element::single(y)))
                              .scaled(leibniz_sign(dp, x.parity()));
            Element defect = lhs - rhs;
            if (!defect.is_zero()) out.push_back({x, y, defect});
        }
}

} // namespace

std::vector<LeibnizViolation> leibniz_violations(const MapTable& d, std::int64_t check_radius) {
    std::vector<LeibnizViolation> out;
    if (d.declared_parity) {
        leibniz_homogeneous(d, check_radius, out);
        return out;
    }
    auto [even_part, odd_part] = d.parity_split();
    leibniz_homogeneous(even_part, check_radius, out);
    leibniz_homogeneous(odd_part, check_radius, out);
    return out;
}

namespace {

bool degree_homogeneous(const Element& e, std::int64_t& deg2) {
    if (e.is_zero()) return false;
    auto parts = degree_decompose(e);
    if (parts.size() != 1) return false;
    deg2 = parts.front().first;
    return true;
}

// residual for a miss: must be nonzero so "residual zero iff exact" holds
Element miss_residual(const MapTable& d, const Element& candidate) {
    if (!candidate.is_zero()) return candidate;
    for (const auto& [in, out] : d.entries) {
        (void)in;
        if (!out.is_zero()) return out;
    }
    return candidate;  // unreachable: an all-zero table is solved by y = 0
}

// Stack the systems [y, in_j] = out_j for y on `unknowns` and solve; the
// target rows per entry cover the exact reachable support plus the output.
WitnessReport solve_stacked(const MapTable& d, const Window& unknowns, const Window& ansatz_echo) {
    const AlgebraConfig& cfg = d.cfg;
    std::vector<Matrix> mats;
    std::vector<std::vector<Scalar>> rhss;
    std::size_t total_rows = 0;
    for (const auto& [in, out] : d.entries) {
        Window tgt = reachable_target(cfg, {in}, unknowns, [&] {
            std::vector<BasisSymbol> extra;
            for (const auto& [s, c] : out.terms) {
                (void)c;
                extra.push_back(s);
            }
            return extra;
        }());
        Matrix m = ad_matrix(cfg, in, unknowns, tgt);
        mats.push_back(std::move(m));
        rhss.push_back(tgt.coords(out));
        total_rows += tgt.size();
    }
    Matrix big(total_rows, unknowns.size());
    std::vector<Scalar> rhs(total_rows);
    std::size_t row0 = 0;
    for (std::size_t j = 0; j < mats.size(); ++j) {
        for (std::size_t r = 0; r < mats[j].rows; ++r) {
            for (std::size_t c = 0; c < mats[j].cols; ++c) big.at(row0 + r, c) = mats[j].at(r, c);
            rhs[row0 + r] = rhss[j][r];
        }
        row0 += mats[j].rows;
    }
    SolveResult sol = solve(big, rhs);
    WitnessReport rep;
    rep.ansatz = ansatz_echo;
    if (sol.status == SolveResult::Status::none) {
        rep.status = WitnessReport::Status::none_in_window;
        rep.witness = Element::zero();
        // point at a single entry that already misses on its own, if any
        Element culprit;
        for (std::size_t j = 0; j < mats.size() && culprit.is_zero(); ++j)
            if (solve(mats[j], rhss[j]).status == SolveResult::Status::none)
                culprit = d.entries[j].second;
        rep.residual = miss_residual(d, culprit);
        return rep;
    }
    rep.status = WitnessReport::Status::witness;
    rep.witness = unknowns.element(sol.particular);
    rep.residual = Element::zero();
    return rep;
}

} // namespace

WitnessReport inner_witness(const MapTable& d, const Window& ansatz) {
    if (!(d.cfg == ansatz.cfg)) throw config_mismatch("map table and ansatz configs differ");
    WitnessReport rep;
    rep.ansatz = ansatz;
    if (d.entries.empty()) {
        rep.status = WitnessReport::Status::witness;
        return rep;
    }

    // Degree-homogeneous inputs: the system splits into independent blocks,
    // one per ansatz degree, which doubles as a certificate for misses.
    std::vector<std::int64_t> in_deg2(d.entries.size());
    bool homogeneous = true;
    for (std::size_t j = 0; j < d.entries.size(); ++j)
        if (!degree_homogeneous(d.entries[j].first, in_deg2[j])) {
            homogeneous = false;
            break;
        }
    if (!homogeneous) return solve_stacked(d, ansatz, ansatz);

    std::map<std::int64_t, std::vector<BasisSymbol>> blocks;
    for (const auto& s : ansatz.symbols) blocks[s.degree2()].push_back(s);

    // Output components must sit at degree (block + input degree) for some
    // block; anything else is unreachable from this ansatz.
    bool all_ok = true;
    for (std::size_t j = 0; j < d.entries.size(); ++j)
        for (const auto& [deg2, comp] : degree_decompose(d.entries[j].second)) {
            std::int64_t t = deg2 - in_deg2[j];
            if (!blocks.count(t)) {
                DegreeBlock b;
                b.y_degree2 = t;
                b.solvable = false;
                b.required = comp;
                rep.blocks.push_back(b);
                all_ok = false;
            }
        }

    Element witness;
    for (const auto& [t, syms] : blocks) {
        Window block_win(d.cfg, syms);
        DegreeBlock blk;
        blk.y_degree2 = t;
        blk.block_dim = syms.size();

        std::vector<Matrix> mats;
        std::vector<std::vector<Scalar>> rhss;
        std::size_t total_rows = 0;
        Element required;
        for (std::size_t j = 0; j < d.entries.size(); ++j) {
            const auto& [in, out] = d.entries[j];
            Element comp;
            for (const auto& [deg2, part] : degree_decompose(out))
                if (deg2 == t + in_deg2[j]) comp = part;
            required += comp;
            Window tgt = reachable_target(d.cfg, {in}, block_win, [&] {
                std::vector<BasisSymbol> extra;
                for (const auto& [s, c] : comp.terms) {
                    (void)c;
                    extra.push_back(s);
                }
                return extra;
            }());
            mats.push_back(ad_matrix(d.cfg, in, block_win, tgt));
            rhss.push_back(tgt.coords(comp));
            total_rows += tgt.size();
        }
        Matrix big(total_rows, block_win.size());
        std::vector<Scalar> rhs(total_rows);
        std::size_t row0 = 0;
        for (std::size_t j = 0; j < mats.size(); ++j) {
            for (std::size_t r = 0; r < mats[j].rows; ++r) {
                for (std::size_t c = 0; c < mats[j].cols; ++c)
                    big.at(row0 + r, c) = mats[j].at(r, c);
                rhs[row0 + r] = rhss[j][r];
            }
            row0 += mats[j].rows;
        }
        SolveResult sol = solve(big, rhs);
        blk.rank = rref(big).rank;
        blk.required = required;
        if (sol.status == SolveResult::Status::none) {
            blk.solvable = false;
            all_ok = false;
        } else {
            blk.solvable = true;
            witness += block_win.element(sol.particular);
        }
        rep.blocks.push_back(blk);
    }

    if (all_ok) {
        rep.status = WitnessReport::Status::witness;
        rep.witness = witness;
        rep.residual = Element::zero();
    } else {
        rep.status = WitnessReport::Status::none_in_window;
        rep.witness = Element::zero();
        Element culprit;
        for (const auto& b : rep.blocks)
            if (!b.solvable && culprit.is_zero()) culprit = b.required;
        rep.residual = miss_residual(d, culprit);
    }
    return rep;
}

WitnessReport local_der_at(const AlgebraConfig& cfg, const Element& x, const Element& v,
                           const Window& ansatz) {
    validate_element(cfg, x);
    validate_element(cfg, v);
    if (x.is_zero()) {
        WitnessReport rep;
        rep.ansatz = ansatz;
        if (v.is_zero()) {
            rep.status = WitnessReport::Status::witness;
        } else {
            // [y, 0] = 0 for every y: no witness exists anywhere, not a
            // window limitation.
            rep.status = WitnessReport::Status::out_of_scope;
            rep.residual = v;
        }
        return rep;
    }
    return inner_witness(MapTable(cfg, {{x, v}}), ansatz);
}

Subspace image_intersection(const AlgebraConfig& cfg, const std::vector<Element>& probes,
                            const Window& ansatz, const Window& target) {
    if (probes.empty()) throw error("image_intersection requires at least one probe");
    for (const auto& p : probes) validate_element(cfg, p);
    Window enlarged = reachable_target(cfg, probes, ansatz, target.symbols);
    Subspace acc = Subspace::full(enlarged);
    bool first = true;
    for (const auto& p : probes) {
        Subspace img = column_image(ad_matrix(cfg, p, ansatz, enlarged), enlarged);
        acc = first ? img : intersect(acc, img);
        first = false;
    }
    return restrict_to(acc, target);
}

NormalizationReport recover_inner_witness(const MapTable& d, const Window& ansatz) {
    const AlgebraConfig& cfg = d.cfg;
    const BasisSymbol L0 = BasisSymbol::L(0), L1 = BasisSymbol::L(1);
    const BasisSymbol G0{Kind::G, 0}, G1{Kind::G, 2};

    std::string missing;
    for (const auto& s : {L0, L1})
        if (!d.has_basis_input(s)) missing += (missing.empty() ? "" : ", ") + s.str();
    if (symbol_valid(cfg, G0) && !d.has_basis_input(G0)) missing += (missing.empty() ? "" : ", ") + G0.str();
    if (symbol_valid(cfg, G1) && !d.has_basis_input(G1)) missing += (missing.empty() ? "" : ", ") + G1.str();
    if (!missing.empty()) throw domain_insufficiency(missing);

    NormalizationReport rep;

    // step 1: strip an inner part matching d(L0)
    Element dL0 = *d.lookup(Element::single(L0));
    WitnessReport w0 = inner_witness(MapTable(cfg, {{Element::single(L0), dL0}}), ansatz);
    if (!w0.found()) {
        rep.status = NormalizationReport::Status::base_unsolvable;
        rep.residuals.emplace_back(Element::single(L0), dL0);
        return rep;
    }
    Element y_acc = w0.witness;

    // step 2: the corrected value at L1 must be c L(1) + dd G(1); read off
    // c, dd and fold the matching degree-0 correction into the witness
    Element v = *d.lookup(Element::single(L1)) - bracket(cfg, y_acc, Element::single(L1));
    Scalar c = v.coeff(L1);
    Scalar dd = symbol_valid(cfg, G1) ? v.coeff(G1) : Scalar(0);
    Element shape_rest = v;
    shape_rest.add_term(L1, -c);
    if (symbol_valid(cfg, G1)) shape_rest.add_term(G1, -dd);
    if (!shape_rest.is_zero()) {
        rep.status = NormalizationReport::Status::shape_violation;
        rep.shape_offender = v;
        rep.witness = y_acc;
        return rep;
    }
    Element y_total = y_acc;
    y_total.add_term(L0, -c);
    if (symbol_valid(cfg, G0)) y_total.add_term(G0, dd * Scalar(-2));

    // step 3: the corrected map must vanish on every input
    rep.witness = y_total;
    rep.all_zero = true;
    for (const auto& [in, out] : d.entries) {
        Element defect = out - bracket(cfg, y_total, in);
        if (!defect.is_zero()) rep.all_zero = false;
        rep.residuals.emplace_back(in, defect);
    }
    rep.status = NormalizationReport::Status::ok;
    return rep;
}

} // namespace svir
