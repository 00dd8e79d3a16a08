#include "svir/fit.hpp"

#include <algorithm>
#include <set>

#include "svir/algebra.hpp"
#include "svir/roots.hpp"

namespace svir {

namespace {

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    std::int64_t x1, y1;
    std::int64_t g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// exponent of the primitive parameter t for a doubled index d:
// t = a needs d/2 on the integer grid, t = h needs d on the half grid
std::int64_t t_exponent(const AlgebraConfig& cfg, std::int64_t d) {
    return cfg.eps2 == 0 ? d / 2 : d;
}

struct BranchState {
    FitBranch br;
    bool alive = true;

    // impose t^e = u
    void merge_power(std::int64_t e, Scalar u) {
        if (!alive) return;
        if (u.is_zero()) {
            alive = false;
            return;
        }
        if (e == 0) {
            if (!(u == Scalar(1))) alive = false;
            return;
        }
        if (e < 0) {
            e = -e;
            u = u.inv();
        }
        if (!br.t_constrained) {
            br.t_constrained = true;
            br.g = e;
            br.w = u;
            return;
        }
        std::int64_t x, y;
        std::int64_t g = ext_gcd(br.g, e, x, y);
        Scalar w = int_pow(br.w, x) * int_pow(u, y);
        if (int_pow(w, br.g / g) != br.w || int_pow(w, e / g) != u) {
            alive = false;
            return;
        }
        br.g = g;
        br.w = w;
    }

    // impose s = v * t^{-e}
    void merge_s(std::int64_t e, const Scalar& v) {
        if (!alive) return;
        if (v.is_zero()) {
            alive = false;
            return;
        }
        if (!br.s_tied) {
            br.s_tied = true;
            br.s_value = v;
            br.s_exp = e;
            return;
        }
        merge_power(e - br.s_exp, v / br.s_value);
    }
};

bool params_less(const AutParams& p, const AutParams& q) {
    if (p.eps != q.eps) return p.eps > q.eps;  // +1 before -1
    if (p.a != q.a) return p.a < q.a;
    if (p.s != q.s) return p.s < q.s;
    Scalar ph = p.h ? *p.h : Scalar(0), qh = q.h ? *q.h : Scalar(0);
    return ph < qh;
}

} // namespace

FitResult fit_table(const AlgebraConfig& cfg,
                    const std::vector<std::pair<Element, Element>>& entries) {
    for (const auto& [x, img] : entries) {
        validate_element(cfg, x);
        validate_element(cfg, img);
        if (x.is_zero()) throw error("fit requires nonzero inputs");
    }

    FitResult out;
    for (int eps : {1, -1}) {
        BranchState st;
        st.br.eps = eps;
        for (const auto& [x, img] : entries) {
            if (img.terms.size() != x.terms.size()) {
                st.alive = false;
                break;
            }
            for (const auto& [sym, c] : x.terms) {
                BasisSymbol mapped = sym.kind == Kind::C
                                         ? BasisSymbol::C()
                                         : BasisSymbol{sym.kind, eps * sym.d};
                Scalar cp = img.coeff(mapped);
                if (cp.is_zero()) {
                    st.alive = false;
                    break;
                }
                switch (sym.kind) {
                    case Kind::C:
                        if (cp != c * Scalar(eps)) st.alive = false;
                        break;
                    case Kind::L:
                        st.merge_power(t_exponent(cfg, sym.d), cp / (c * Scalar(eps)));
                        break;
                    case Kind::G:
                        st.merge_s(t_exponent(cfg, sym.d), cp / c);
                        break;
                }
                if (!st.alive) break;
            }
            if (!st.alive) break;
        }
        if (!st.alive) continue;
        // s^2 = eps ties back into t
        if (st.br.s_tied)
            st.merge_power(2 * st.br.s_exp, st.br.s_value * st.br.s_value / Scalar(eps));
        if (!st.alive) continue;

        out.branches.push_back(st.br);

        if (!st.br.t_constrained) {
            // free family (e.g. fitting at C or L(0) alone)
            out.infinite = true;
            out.realizable = true;
            continue;
        }
        for (const Scalar& t0 : kth_roots(st.br.w, st.br.g)) {
            if (t0.is_zero()) continue;
            std::vector<Scalar> s_choices;
            if (st.br.s_tied) {
                s_choices.push_back(st.br.s_value * int_pow(t0, -st.br.s_exp));
            } else if (eps == 1) {
                s_choices = {Scalar(1), Scalar(-1)};
            } else {
                s_choices = {Scalar::i(), -Scalar::i()};
            }
            for (const Scalar& s0 : s_choices) {
                if (s0 * s0 != Scalar(eps)) continue;
                AutParams p;
                p.eps = eps;
                p.s = s0;
                if (cfg.eps2 == 1) {
                    p.h = t0;
                    p.a = t0 * t0;
                } else {
                    p.a = t0;
                }
                p = canonicalize(cfg, p);
                try {
                    validate_params(cfg, p);
                } catch (const error&) {
                    continue;
                }
                bool reproduces = true;
                for (const auto& [x, img] : entries)
                    if (apply_aut(cfg, p, x) != img) {
                        reproduces = false;
                        break;
                    }
                if (reproduces &&
                    std::find(out.candidates.begin(), out.candidates.end(), p) ==
                        out.candidates.end())
                    out.candidates.push_back(p);
            }
        }
    }
    std::sort(out.candidates.begin(), out.candidates.end(), params_less);
    if (!out.candidates.empty()) out.realizable = true;
    return out;
}

FitResult fit_single(const AlgebraConfig& cfg, const Element& x, const Element& image) {
    if (x.is_zero()) throw error("fit requires a nonzero element");
    return fit_table(cfg, {{x, image}});
}

std::vector<Element> standard_local_probes(const AlgebraConfig& cfg, std::int64_t radius) {
    if (radius < 1) throw error("probe sets need radius >= 1 (L(1) is mandatory)");
    std::vector<Element> out;
    const Element L1 = Element::single(BasisSymbol::L(1));
    for (std::int64_t m = -radius; m <= radius; ++m)
        out.push_back(Element::single(BasisSymbol::L(m)));
    out.push_back(Element::single(BasisSymbol::L(-1)) + L1);
    std::vector<BasisSymbol> gs;
    for (std::int64_t d = -2 * radius; d <= 2 * radius; ++d)
        if (symbol_valid(cfg, BasisSymbol{Kind::G, d})) gs.push_back(BasisSymbol{Kind::G, d});
    for (const auto& g : gs) out.push_back(Element::single(g));
    for (const auto& g : gs) out.push_back(Element::single(g) + L1);
    for (const auto& g : gs) {
        BasisSymbol next{Kind::G, g.d + 2};
        if (symbol_valid(cfg, next) && next.d <= 2 * radius)
            out.push_back(Element::single(g) + Element::single(next) + L1);
    }
    if (cfg.with_center) out.push_back(Element::single(BasisSymbol::C()));
    return out;
}

std::vector<Element> standard_pair_budget(const AlgebraConfig& cfg, std::int64_t radius) {
    if (radius < 1) throw error("probe budgets need radius >= 1 (L(1) is mandatory)");
    std::vector<Element> out;
    const Element L1 = Element::single(BasisSymbol::L(1));
    for (const auto& s : symbols_in_radius(cfg, radius)) out.push_back(Element::single(s));
    out.push_back(Element::single(BasisSymbol::L(-1)) + L1);
    std::vector<BasisSymbol> gs;
    for (std::int64_t d = -2 * radius; d <= 2 * radius; ++d)
        if (symbol_valid(cfg, BasisSymbol{Kind::G, d})) gs.push_back(BasisSymbol{Kind::G, d});
    for (const auto& g : gs) out.push_back(Element::single(g) + L1);
    for (const auto& g : gs) {
        BasisSymbol next{Kind::G, g.d + 2};
        if (symbol_valid(cfg, next) && next.d <= 2 * radius)
            out.push_back(Element::single(g) + Element::single(next));
    }
    return out;
}

std::optional<Element> probe_lookup(const ProbeTable& t, const Element& x) {
    for (const auto& [in, out] : t)
        if (in == x) return out;
    return std::nullopt;
}

LocalAutDecision local_aut_decide(const AlgebraConfig& cfg, const ProbeTable& t,
                                  std::int64_t radius) {
    std::string missing;
    for (const auto& probe : standard_local_probes(cfg, radius))
        if (!probe_lookup(t, probe)) {
            if (!missing.empty()) missing += ", ";
            // name the missing probe via its terms
            std::string desc;
            for (const auto& [s, c] : probe.terms) {
                (void)c;
                desc += (desc.empty() ? "" : "+") + s.str();
            }
            missing += desc;
        }
    if (!missing.empty()) throw domain_insufficiency("probe set incomplete: " + missing);

    LocalAutDecision dec;
    for (const auto& [in, out] : t) {
        FitResult f = fit_single(cfg, in, out);
        if (!f.realizable) {
            dec.kind = LocalAutDecision::Kind::pointwise_failure;
            dec.failing_probe = in;
            return dec;
        }
    }

    FitResult full = fit_table(cfg, t);
    if (!full.candidates.empty()) {
        dec.kind = LocalAutDecision::Kind::automorphism;
        dec.params = full.candidates.front();
        return dec;
    }

    dec.kind = LocalAutDecision::Kind::global_inconsistency;
    // prefer a pair that includes L(1); fall back to all pairs, then triples
    const Element L1 = Element::single(BasisSymbol::L(1));
    const auto& es = t;
    std::size_t l1_idx = es.size();
    for (std::size_t i = 0; i < es.size(); ++i)
        if (es[i].first == L1) l1_idx = i;
    auto try_pair = [&](std::size_t i, std::size_t j) {
        FitResult f = fit_table(cfg, {es[i], es[j]});
        if (!f.realizable) {
            dec.witnesses = {es[i].first, es[j].first};
            return true;
        }
        return false;
    };
    if (l1_idx < es.size())
        for (std::size_t j = 0; j < es.size(); ++j)
            if (j != l1_idx && try_pair(l1_idx, j)) return dec;
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j)
            if (try_pair(i, j)) return dec;
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j)
            for (std::size_t k = j + 1; k < es.size(); ++k) {
                FitResult f = fit_table(cfg, {es[i], es[j], es[k]});
                if (!f.realizable) {
                    dec.witnesses = {es[i].first, es[j].first, es[k].first};
                    return dec;
                }
            }
    for (const auto& [in, out] : es) {
        (void)out;
        dec.witnesses.push_back(in);
    }
    return dec;
}

TwoLocalResult two_local_recover(const AutOracle& oracle, const AlgebraConfig& cfg,
                                 const std::vector<Element>& budget) {
    TwoLocalResult res;
    const Element L1 = Element::single(BasisSymbol::L(1));
    Element v1 = oracle(L1);
    FitResult f1 = fit_single(cfg, L1, v1);
    if (f1.candidates.empty()) {
        res.kind = TwoLocalResult::Kind::pair_failure;
        res.failing = {L1, L1};
        res.reason = "no family member realizes the value at L(1)";
        return res;
    }
    std::vector<AutParams> candidates = f1.candidates;
    std::vector<char> alive(candidates.size(), 1);
    std::vector<std::pair<Element, Element>> values;  // (z, oracle(z))
    std::vector<std::vector<char>> matches;           // per budget element

    for (const auto& z : budget) {
        if (z == L1) continue;
        Element vz = oracle(z);
        std::vector<char> m(candidates.size(), 0);
        bool any = false;
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (apply_aut(cfg, candidates[i], z) == vz) {
                m[i] = 1;
                any = true;
            }
        if (!any) {
            res.kind = TwoLocalResult::Kind::pair_failure;
            res.failing = {L1, z};
            res.reason = "no single family member matches both values";
            return res;
        }
        for (std::size_t i = 0; i < candidates.size(); ++i) alive[i] = alive[i] && m[i];
        values.emplace_back(z, vz);
        matches.push_back(std::move(m));
    }

    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (alive[i]) {
            res.kind = TwoLocalResult::Kind::automorphism;
            res.params = candidates[i];
            return res;
        }

    // every probe is individually consistent with the L(1) value but no
    // candidate survives the whole budget: certify with a jointly
    // unfittable pair when one exists
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            bool joint = false;
            for (std::size_t c = 0; c < candidates.size(); ++c)
                if (matches[i][c] && matches[j][c]) joint = true;
            if (joint) continue;
            FitResult fp = fit_table(cfg, {values[i], values[j]});
            if (!fp.realizable) {
                res.kind = TwoLocalResult::Kind::pair_failure;
                res.failing = {values[i].first, values[j].first};
                res.reason = "no single family member matches both values";
                return res;
            }
            res.kind = TwoLocalResult::Kind::pair_failure;
            res.failing = {values[i].first, values[j].first};
            res.reason =
                "no single family member matches both values together with the value at L(1)";
            return res;
        }
    res.kind = TwoLocalResult::Kind::pair_failure;
    res.failing = {L1, values.empty() ? L1 : values.front().first};
    res.reason = "no family member survives the whole budget";
    return res;
}

} // namespace svir
