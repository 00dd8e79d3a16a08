#include "svir/job.hpp"

#include <algorithm>
#include <sstream>

#include "svir/algebra.hpp"
#include "svir/derivations.hpp"
#include "svir/fit.hpp"
#include "svir/text.hpp"

namespace svir {

namespace {

std::string cfg_eps_text(const AlgebraConfig& cfg) { return cfg.eps2 == 0 ? "0" : "1/2"; }

ojson cfg_json(const AlgebraConfig& cfg) {
    return ojson{{"epsilon", cfg_eps_text(cfg)}, {"with_center", cfg.with_center}};
}

ojson params_json(const AlgebraConfig& cfg, const AutParams& p) {
    ojson j;
    j["eps"] = p.eps > 0 ? "+1" : "-1";
    j["a"] = scalar_text(p.a);
    j["s"] = scalar_text(p.s);
    if (cfg.eps2 == 1 && p.h)
        j["h"] = scalar_text(*p.h);
    else
        j["h"] = nullptr;
    return j;
}

AutParams params_from_json(const AlgebraConfig& cfg, const ojson& j) {
    AutParams p;
    std::string eps = j.at("eps").get<std::string>();
    if (eps == "+1" || eps == "1")
        p.eps = 1;
    else if (eps == "-1")
        p.eps = -1;
    else
        throw error("params: eps must be \"+1\" or \"-1\"");
    p.a = parse_scalar(j.at("a").get<std::string>());
    p.s = parse_scalar(j.at("s").get<std::string>());
    if (j.contains("h") && !j.at("h").is_null())
        p.h = parse_scalar(j.at("h").get<std::string>());
    validate_params(cfg, p);
    return p;
}

std::vector<std::pair<Element, Element>> entries_from_json(const AlgebraConfig& cfg,
                                                           const ojson& arr) {
    if (!arr.is_array() || arr.empty()) throw error("entries must be a nonempty array");
    std::vector<std::pair<Element, Element>> out;
    for (const auto& e : arr)
        out.emplace_back(parse_element(cfg, e.at("in").get<std::string>()),
                         parse_element(cfg, e.at("out").get<std::string>()));
    return out;
}

ojson entries_json(const std::vector<std::pair<Element, Element>>& entries) {
    ojson arr = ojson::array();
    for (const auto& [in, out] : entries)
        arr.push_back(ojson{{"in", element_text(in)}, {"out", element_text(out)}});
    return arr;
}

std::int64_t option_int(const ojson& options, const char* key, std::int64_t fallback) {
    if (options.contains(key)) return options.at(key).get<std::int64_t>();
    return fallback;
}

std::int64_t require_int(const ojson& options, const char* key) {
    if (!options.contains(key)) throw error(std::string("missing option: ") + key);
    return options.at(key).get<std::int64_t>();
}

ojson witness_json(const WitnessReport& rep) {
    ojson j;
    switch (rep.status) {
        case WitnessReport::Status::witness: j["status"] = "witness"; break;
        case WitnessReport::Status::none_in_window: j["status"] = "none_in_window"; break;
        case WitnessReport::Status::out_of_scope: j["status"] = "out_of_scope"; break;
    }
    j["witness"] = element_text(rep.witness);
    j["residual"] = element_text(rep.residual);
    ojson blocks = ojson::array();
    for (const auto& b : rep.blocks) {
        blocks.push_back(ojson{{"degree", degree2_text(b.y_degree2)},
                               {"solvable", b.solvable},
                               {"dim", b.block_dim},
                               {"rank", b.rank},
                               {"required",

                                element_text(b.required)}});
    }
    j["blocks"] = blocks;
    return j;
}

std::string probe_text(const Element& e) { return element_text(e); }

struct TaskOutput {
    ojson inputs = ojson::object();
    ojson result = ojson::object();
    std::string status = "ok";  // "ok" or "violation"
    std::vector<std::string> notes;
    std::string human_body;
};

TaskOutput task_bracket(const Job& job) {
    TaskOutput out;
    Element lhs = parse_element(job.cfg, job.operands.at("lhs").get<std::string>());
    Element rhs = parse_element(job.cfg, job.operands.at("rhs").get<std::string>());
    out.inputs["lhs"] = element_text(lhs);
    out.inputs["rhs"] = element_text(rhs);
    Element b = bracket(job.cfg, lhs, rhs);
    out.result["bracket"] = element_text(b);
    out.human_body = "[" + element_text(lhs) + ", " + element_text(rhs) + "] = " + element_text(b);
    return out;
}

TaskOutput task_jacobi(const Job& job) {
    TaskOutput out;
    std::int64_t radius = require_int(job.options, "radius");
    out.inputs["radius"] = radius;
    JacobiReport rep = jacobi_report(job.cfg, radius);
    ojson jv = ojson::array();
    for (const auto& v : rep.jacobi)
        jv.push_back(ojson{{"x", v.x.str()}, {"y", v.y.str()}, {"z", v.z.str()},
                           {"defect", element_text(v.defect)}});
    ojson sv = ojson::array();
    for (const auto& v : rep.skew)
        sv.push_back(ojson{{"x", v.x.str()}, {"y", v.y.str()}, {"defect", element_text(v.defect)}});
    out.result["jacobi_violations"] = jv;
    out.result["skew_violations"] = sv;
    std::size_t n = rep.jacobi.size() + rep.skew.size();
    out.result["count"] = n;
    out.status = rep.clean() ? "ok" : "violation";
    out.human_body = std::to_string(n) + " violations at radius " + std::to_string(radius);
    return out;
}

TaskOutput task_der_witness(const Job& job) {
    TaskOutput out;
    auto entries = entries_from_json(job.cfg, job.operands.at("entries"));
    std::int64_t radius = require_int(job.options, "ansatz_radius");
    out.inputs["entries"] = entries_json(entries);
    out.inputs["ansatz_radius"] = radius;
    MapTable d(job.cfg, entries);
    WitnessReport rep = inner_witness(d, Window::radius(job.cfg, radius));
    out.result = witness_json(rep);
    out.status = rep.found() ? "ok" : "violation";
    out.human_body = rep.found() ? "witness y = " + element_text(rep.witness)
                                 : "no witness in the ansatz window";
    return out;
}

TaskOutput task_der_local(const Job& job) {
    TaskOutput out;
    Element x = parse_element(job.cfg, job.operands.at("x").get<std::string>());
    Element v = parse_element(job.cfg, job.operands.at("v").get<std::string>());
    std::int64_t radius = require_int(job.options, "ansatz_radius");
    out.inputs["x"] = element_text(x);
    out.inputs["v"] = element_text(v);
    out.inputs["ansatz_radius"] = radius;
    WitnessReport rep = local_der_at(job.cfg, x, v, Window::radius(job.cfg, radius));
    out.result = witness_json(rep);
    out.status = rep.found() ? "ok" : "violation";
    out.human_body = rep.found() ? "witness y = " + element_text(rep.witness)
                                 : "value is not attainable at this point in the window";
    return out;
}

TaskOutput task_der_intersect(const Job& job) {
    TaskOutput out;
    std::vector<Element> probes;
    for (const auto& p : job.operands.at("probes"))
        probes.push_back(parse_element(job.cfg, p.get<std::string>()));
    if (probes.empty()) throw error("der-intersect requires probes");
    std::int64_t radius = require_int(job.options, "radius");
    std::int64_t max_probe_deg = 0;
    for (const auto& p : probes) max_probe_deg = std::max(max_probe_deg, (p.max_abs_degree2() + 1) / 2);
    std::int64_t ansatz_radius = option_int(job.options, "ansatz_radius", radius + max_probe_deg);

    ojson probe_arr = ojson::array();
    for (const auto& p : probes) probe_arr.push_back(element_text(p));
    out.inputs["probes"] = probe_arr;
    out.inputs["radius"] = radius;
    out.inputs["ansatz_radius"] = ansatz_radius;

    Subspace s = image_intersection(job.cfg, probes, Window::radius(job.cfg, ansatz_radius),
                                    Window::radius(job.cfg, radius));
    ojson basis = ojson::array();
    for (const auto& e : s.basis_elements()) basis.push_back(element_text(e));
    out.result["dim"] = s.dim();
    out.result["basis"] = basis;
    out.human_body = "intersection dimension " + std::to_string(s.dim());
    return out;
}

TaskOutput task_der_pipeline(const Job& job) {
    TaskOutput out;
    auto entries = entries_from_json(job.cfg, job.operands.at("entries"));
    std::int64_t radius = require_int(job.options, "ansatz_radius");
    out.inputs["entries"] = entries_json(entries);
    out.inputs["ansatz_radius"] = radius;
    MapTable d(job.cfg, entries);
    NormalizationReport rep = recover_inner_witness(d, Window::radius(job.cfg, radius));
    switch (rep.status) {
        case NormalizationReport::Status::ok: out.result["status"] = "ok"; break;
        case NormalizationReport::Status::base_unsolvable:
            out.result["status"] = "base_unsolvable";
            break;
        case NormalizationReport::Status::shape_violation:
            out.result["status"] = "shape_violation";
            out.result["shape_offender"] = element_text(rep.shape_offender);
            break;
    }
    out.result["witness"] = element_text(rep.witness);
    out.result["all_zero"] = rep.all_zero;
    ojson res = ojson::array();
    for (const auto& [in, defect] : rep.residuals)
        res.push_back(ojson{{"in", element_text(in)}, {"defect", element_text(defect)}});
    out.result["residuals"] = res;
    out.status = rep.inner_on_window() ? "ok" : "violation";
    out.human_body = rep.inner_on_window()
                         ? "inner witness y = " + element_text(rep.witness)
                         : "table is not inner on this window";
    return out;
}

TaskOutput task_aut_apply(const Job& job) {
    TaskOutput out;
    AutParams p = params_from_json(job.cfg, job.operands.at("params"));
    Element x = parse_element(job.cfg, job.operands.at("x").get<std::string>());
    out.inputs["params"] = params_json(job.cfg, p);
    out.inputs["x"] = element_text(x);
    Element img = apply_aut(job.cfg, p, x);
    out.result["image"] = element_text(img);
    out.human_body = "sigma(" + element_text(x) + ") = " + element_text(img);
    return out;
}

ojson branch_json(const AlgebraConfig& cfg, const FitBranch& b) {
    ojson j;
    j["eps"] = b.eps > 0 ? "+1" : "-1";
    j["t_var"] = cfg.eps2 == 0 ? "a" : "h";
    if (b.t_constrained)
        j["constraint"] = ojson{{"power", b.g}, {"value", scalar_text(b.w)}};
    else
        j["constraint"] = "free";
    if (b.s_tied)
        j["s"] = ojson{{"tied_value", scalar_text(b.s_value)}, {"tied_exp", b.s_exp}};
    else
        j["s"] = "free";
    return j;
}

TaskOutput task_aut_fit(const Job& job) {
    TaskOutput out;
    Element x = parse_element(job.cfg, job.operands.at("x").get<std::string>());
    Element image = parse_element(job.cfg, job.operands.at("image").get<std::string>());
    out.inputs["x"] = element_text(x);
    out.inputs["image"] = element_text(image);
    FitResult f = fit_single(job.cfg, x, image);
    out.result["realizable"] = f.realizable;
    out.result["infinite"] = f.infinite;
    ojson branches = ojson::array();
    for (const auto& b : f.branches) branches.push_back(branch_json(job.cfg, b));
    out.result["branches"] = branches;
    ojson cands = ojson::array();
    for (const auto& p : f.candidates) cands.push_back(params_json(job.cfg, p));
    out.result["candidates"] = cands;
    if (x == Element::single(BasisSymbol::L(1)) && image == x)
        out.notes.push_back(
            "the family fixing L(1) is {identity, grading involution}: sigma(L(1)) = L(1) does "
            "not force sigma = id; see README, section 'Automorphism family notes'");
    out.status = f.realizable ? "ok" : "violation";
    out.human_body = f.realizable
                         ? "realizable; " + std::to_string(f.candidates.size()) + " concrete candidate(s)"
                         : "not realizable by any family member";
    return out;
}

TaskOutput task_aut_check(const Job& job) {
    TaskOutput out;
    auto entries = entries_from_json(job.cfg, job.operands.at("entries"));
    std::int64_t radius = require_int(job.options, "radius");
    out.inputs["entries"] = entries_json(entries);
    out.inputs["radius"] = radius;
    MapTable t(job.cfg, entries);
    AutCheckResult res = is_automorphism_table(t, radius);
    out.result["ok"] = res.ok;
    if (!res.ok) {
        out.result["violation"] =
            ojson{{"x", res.x.str()},
                  {"y", res.y.str()},
                  {"map_of_bracket", element_text(res.lhs)},
                  {"bracket_of_maps", element_text(res.rhs)}};
    }
    out.status = res.ok ? "ok" : "violation";
    out.human_body = res.ok ? "bracket-preserving on the window"
                            : "multiplicativity fails at [" + res.x.str() + ", " + res.y.str() + "]";
    return out;
}

TaskOutput task_aut_local(const Job& job) {
    TaskOutput out;
    auto entries = entries_from_json(job.cfg, job.operands.at("entries"));
    std::int64_t radius = require_int(job.options, "radius");
    out.inputs["entries"] = entries_json(entries);
    out.inputs["radius"] = radius;
    LocalAutDecision dec = local_aut_decide(job.cfg, entries, radius);
    switch (dec.kind) {
        case LocalAutDecision::Kind::automorphism:
            out.result["verdict"] = "automorphism";
            out.result["params"] = params_json(job.cfg, dec.params);
            out.human_body = "table is an automorphism restriction";
            break;
        case LocalAutDecision::Kind::pointwise_failure:
            out.result["verdict"] = "pointwise-failure";
            out.result["failing_probe"] = probe_text(dec.failing_probe);
            out.status = "violation";
            out.human_body = "no family member realizes the value at " + probe_text(dec.failing_probe);
            break;
        case LocalAutDecision::Kind::global_inconsistency: {
            out.result["verdict"] = "global-inconsistency";
            ojson w = ojson::array();
            for (const auto& e : dec.witnesses) w.push_back(probe_text(e));
            out.result["witnesses"] = w;
            out.status = "violation";
            out.human_body = "entries are pointwise realizable but jointly unfittable";
            break;
        }
    }
    return out;
}

TaskOutput task_aut_2local(const Job& job) {
    TaskOutput out;
    auto entries = entries_from_json(job.cfg, job.operands.at("entries"));
    out.inputs["entries"] = entries_json(entries);
    const Element L1 = Element::single(BasisSymbol::L(1));
    if (!probe_lookup(entries, L1)) throw error("aut-2local: the oracle table must contain L(1)");
    std::vector<Element> budget;
    for (const auto& [in, o] : entries) {
        (void)o;
        if (!(in == L1)) budget.push_back(in);
    }
    AutOracle oracle = [&entries](const Element& z) {
        auto v = probe_lookup(entries, z);
        if (!v) throw domain_insufficiency("oracle table has no value at " + element_text(z));
        return *v;
    };
    TwoLocalResult res = two_local_recover(oracle, job.cfg, budget);
    if (res.kind == TwoLocalResult::Kind::automorphism) {
        out.result["verdict"] = "automorphism";
        out.result["params"] = params_json(job.cfg, res.params);
        out.human_body = "oracle agrees with a single family member";
    } else {
        out.result["verdict"] = "pair-failure";
        out.result["pair"] = ojson::array({probe_text(res.failing.first), probe_text(res.failing.second)});
        out.result["reason"] = res.reason;
        out.status = "violation";
        out.human_body = "pairwise inconsistency at (" + probe_text(res.failing.first) + ", " +
                         probe_text(res.failing.second) + ")";
    }
    return out;
}

} // namespace

Job job_from_json(const ojson& doc) {
    Job job;
    const auto& cfg = doc.at("config");
    std::string eps = cfg.at("epsilon").get<std::string>();
    if (eps == "0")
        job.cfg.eps2 = 0;
    else if (eps == "1/2")
        job.cfg.eps2 = 1;
    else
        throw error("config.epsilon must be \"0\" or \"1/2\"");
    job.cfg.with_center = cfg.at("with_center").get<bool>();
    job.task = doc.at("task").get<std::string>();
    bool known = false;
    for (const char* t : kTasks)
        if (job.task == t) known = true;
    if (!known) throw error("unknown task: " + job.task);
    if (doc.contains("operands")) job.operands = doc.at("operands");
    if (doc.contains("options")) job.options = doc.at("options");
    return job;
}

ojson job_to_json(const Job& job) {
    ojson doc;
    doc["config"] = cfg_json(job.cfg);
    doc["task"] = job.task;
    doc["operands"] = job.operands;
    doc["options"] = job.options;
    return doc;
}

Report run_job(const Job& job) {
    TaskOutput out;
    if (job.task == "bracket")
        out = task_bracket(job);
    else if (job.task == "jacobi")
        out = task_jacobi(job);
    else if (job.task == "der-witness")
        out = task_der_witness(job);
    else if (job.task == "der-local")
        out = task_der_local(job);
    else if (job.task == "der-intersect")
        out = task_der_intersect(job);
    else if (job.task == "der-pipeline")
        out = task_der_pipeline(job);
    else if (job.task == "aut-apply")
        out = task_aut_apply(job);
    else if (job.task == "aut-fit")
        out = task_aut_fit(job);
    else if (job.task == "aut-check")
        out = task_aut_check(job);
    else if (job.task == "aut-local")
        out = task_aut_local(job);
    else if (job.task == "aut-2local")
        out = task_aut_2local(job);
    else
        throw error("unknown task: " + job.task);

    Report rep;
    rep.machine["tool"] = "svir";
    rep.machine["task"] = job.task;
    rep.machine["config"] = cfg_json(job.cfg);
    rep.machine["inputs"] = out.inputs;
    rep.machine["result"] = out.result;
    rep.machine["status"] = out.status;
    ojson notes = ojson::array();
    for (const auto& n : out.notes) notes.push_back(n);
    rep.machine["notes"] = notes;
    rep.exit_code = out.status == "ok" ? 0 : 1;

    std::ostringstream h;
    h << "svir " << job.task << " (" << job.cfg.describe() << ")\n";
    h << "  " << out.human_body << "\n";
    for (const auto& n : out.notes) h << "  note: " << n << "\n";
    h << "  status: " << out.status << "\n";
    rep.human = h.str();
    return rep;
}

} // namespace svir
