#include "svir/algebra.hpp"
#include "svir/derivations.hpp"
#include "svir/fit.hpp"
#include "svir/job.hpp"
#include "svir/text.hpp"

namespace svir {

namespace {

bool fail(std::string& detail, const std::string& msg) {
    detail = msg;
    return false;
}

Element parse(const AlgebraConfig& cfg, const ojson& j) {
    return parse_element(cfg, j.get<std::string>());
}

// [x, y] recomputed through the super-skew route, component by component:
// [x_p, y_q] = -(-1)^{pq} [y_q, x_p]
Element bracket_via_skew(const AlgebraConfig& cfg, const Element& x, const Element& y) {
    Element out;
    for (const auto& [sx, cx] : x.terms)
        for (const auto& [sy, cy] : y.terms) {
            Scalar sign = (sx.parity() == Parity::odd && sy.parity() == Parity::odd)
                              ? Scalar(1)
                              : Scalar(-1);
            out += bracket_basis(cfg, sy, sx).scaled(sign * cx * cy);
        }
    return out;
}

std::vector<std::pair<Element, Element>> entries_of(const AlgebraConfig& cfg, const ojson& arr) {
    std::vector<std::pair<Element, Element>> out;
    for (const auto& e : arr)
        out.emplace_back(parse(cfg, e.at("in")), parse(cfg, e.at("out")));
    return out;
}

AutParams params_of(const AlgebraConfig& cfg, const ojson& j) {
    AutParams p;
    p.eps = j.at("eps").get<std::string>() == "-1" ? -1 : 1;
    p.a = parse_scalar(j.at("a").get<std::string>());
    p.s = parse_scalar(j.at("s").get<std::string>());
    if (!j.at("h").is_null()) p.h = parse_scalar(j.at("h").get<std::string>());
    validate_params(cfg, p);
    return p;
}

} // namespace

bool verify_report(const Job& job, const ojson& machine, std::string& detail) {
    const AlgebraConfig& cfg = job.cfg;
    const std::string task = machine.at("task").get<std::string>();
    const ojson& inputs = machine.at("inputs");
    const ojson& result = machine.at("result");

    if (task == "bracket") {
        Element lhs = parse(cfg, inputs.at("lhs"));
        Element rhs = parse(cfg, inputs.at("rhs"));
        Element claimed = parse(cfg, result.at("bracket"));
        if (bracket_via_skew(cfg, lhs, rhs) != claimed)
            return fail(detail, "bracket does not match the super-skew recomputation");
        return true;
    }

    if (task == "jacobi") {
        // re-evaluate each listed violation; an empty list carries no claim
        // beyond the sweep itself
        for (const auto& v : result.at("jacobi_violations")) {
            Element defect = parse(cfg, v.at("defect"));
            if (defect.is_zero()) return fail(detail, "listed violation has zero defect");
        }
        return true;
    }

    if (task == "der-witness" || task == "der-local") {
        std::vector<std::pair<Element, Element>> entries;
        if (task == "der-witness")
            entries = entries_of(cfg, inputs.at("entries"));
        else
            entries.emplace_back(parse(cfg, inputs.at("x")), parse(cfg, inputs.at("v")));
        if (result.at("status").get<std::string>() == "witness") {
            Element y = parse(cfg, result.at("witness"));
            for (const auto& [in, out] : entries)
                if (bracket(cfg, y, in) != out)
                    return fail(detail, "witness does not reproduce an output");
            return true;
        }
        // negative verdict: re-derive
        std::int64_t radius = inputs.at("ansatz_radius").get<std::int64_t>();
        WitnessReport rep = inner_witness(MapTable(cfg, entries), Window::radius(cfg, radius));
        if (rep.found()) return fail(detail, "negative verdict but a witness exists");
        return true;
    }

    if (task == "der-intersect") {
        std::vector<Element> probes;
        for (const auto& p : inputs.at("probes")) probes.push_back(parse(cfg, p));
        std::int64_t ansatz_radius = inputs.at("ansatz_radius").get<std::int64_t>();
        Window ansatz = Window::radius(cfg, ansatz_radius);
        if (result.at("basis").size() != result.at("dim").get<std::size_t>())
            return fail(detail, "dim does not match basis size");
        for (const auto& bj : result.at("basis")) {
            Element v = parse(cfg, bj);
            for (const auto& p : probes) {
                WitnessReport rep = local_der_at(cfg, p, v, ansatz);
                if (!rep.found())
                    return fail(detail, "basis vector " + element_text(v) +
                                            " is not in the image of probe " + element_text(p));
            }
        }
        return true;
    }

    if (task == "der-pipeline") {
        auto entries = entries_of(cfg, inputs.at("entries"));
        Element y = parse(cfg, result.at("witness"));
        std::map<std::string, Element> defects;
        for (const auto& r : result.at("residuals"))
            defects[r.at("in").get<std::string>()] = parse(cfg, r.at("defect"));
        if (result.at("status").get<std::string>() == "ok") {
            for (const auto& [in, out] : entries) {
                auto it = defects.find(element_text(in));
                if (it == defects.end()) return fail(detail, "missing residual entry");
                if (bracket(cfg, y, in) + it->second != out)
                    return fail(detail, "witness + residual does not reproduce an output");
            }
        }
        return true;
    }

    if (task == "aut-apply") {
        AutParams p = params_of(cfg, inputs.at("params"));
        Element x = parse(cfg, inputs.at("x"));
        if (apply_aut(cfg, p, x) != parse(cfg, result.at("image")))
            return fail(detail, "image does not match re-application");
        return true;
    }

    if (task == "aut-fit") {
        Element x = parse(cfg, inputs.at("x"));
        Element image = parse(cfg, inputs.at("image"));
        for (const auto& cj : result.at("candidates")) {
            AutParams p = params_of(cfg, cj);
            if (apply_aut(cfg, p, x) != image)
                return fail(detail, "candidate does not map x to image");
        }
        if (!result.at("realizable").get<bool>()) {
            FitResult f = fit_single(cfg, x, image);
            if (f.realizable) return fail(detail, "claimed unrealizable but a fit exists");
        }
        return true;
    }

    if (task == "aut-check") {
        auto entries = entries_of(cfg, inputs.at("entries"));
        MapTable t(cfg, entries);
        if (!result.at("ok").get<bool>()) {
            const auto& v = result.at("violation");
            // re-evaluate the named pair directly
            Element ex = parse_element(cfg, v.at("x").get<std::string>());
            Element ey = parse_element(cfg, v.at("y").get<std::string>());
            Element lhs = t.apply(bracket(cfg, ex, ey));
            Element rhs = bracket(cfg, t.apply(ex), t.apply(ey));
            if (lhs == rhs) return fail(detail, "listed violation pair actually commutes");
        }
        return true;
    }

    if (task == "aut-local") {
        auto entries = entries_of(cfg, inputs.at("entries"));
        std::string verdict = result.at("verdict").get<std::string>();
        if (verdict == "automorphism") {
            AutParams p = params_of(cfg, result.at("params"));
            for (const auto& [in, out] : entries)
                if (apply_aut(cfg, p, in) != out)
                    return fail(detail, "returned params do not reproduce the table");
            return true;
        }
        if (verdict == "pointwise-failure") {
            Element probe = parse(cfg, result.at("failing_probe"));
            auto out = probe_lookup(entries, probe);
            if (!out) return fail(detail, "failing probe is not a table input");
            if (fit_single(cfg, probe, *out).realizable)
                return fail(detail, "failing probe is actually realizable");
            return true;
        }
        // global inconsistency: the witness set must be jointly unfittable
        std::vector<std::pair<Element, Element>> sub;
        for (const auto& wj : result.at("witnesses")) {
            Element in = parse(cfg, wj);
            auto out = probe_lookup(entries, in);
            if (!out) return fail(detail, "witness probe is not a table input");
            sub.emplace_back(in, *out);
        }
        if (fit_table(cfg, sub).realizable)
            return fail(detail, "witness set is actually jointly fittable");
        return true;
    }

    if (task == "aut-2local") {
        auto entries = entries_of(cfg, inputs.at("entries"));
        std::string verdict = result.at("verdict").get<std::string>();
        if (verdict == "automorphism") {
            AutParams p = params_of(cfg, result.at("params"));
            for (const auto& [in, out] : entries)
                if (apply_aut(cfg, p, in) != out)
                    return fail(detail, "returned params do not reproduce the oracle table");
            return true;
        }
        Element a = parse(cfg, result.at("pair").at(0));
        Element b = parse(cfg, result.at("pair").at(1));
        auto va = probe_lookup(entries, a), vb = probe_lookup(entries, b);
        if (!va || !vb) return fail(detail, "failing pair is not in the oracle table");
        std::string reason = result.at("reason").get<std::string>();
        if (reason == "no single family member matches both values") {
            if (a == b) {
                if (fit_single(cfg, a, *va).realizable)
                    return fail(detail, "claimed unrealizable point is realizable");
            } else if (fit_table(cfg, {{a, *va}, {b, *vb}}).realizable) {
                return fail(detail, "failing pair is actually jointly fittable");
            }
            return true;
        }
        // budget-wide inconsistency: check that no candidate fitting L(1)
        // matches both members of the pair
        const Element L1 = Element::single(BasisSymbol::L(1));
        auto v1 = probe_lookup(entries, L1);
        if (!v1) return fail(detail, "oracle table lacks L(1)");
        for (const auto& p : fit_single(cfg, L1, *v1).candidates)
            if (apply_aut(cfg, p, a) == *va && apply_aut(cfg, p, b) == *vb)
                return fail(detail, "a candidate matches the claimed failing pair");
        return true;
    }

    return fail(detail, "unknown task in report");
}

} // namespace svir
