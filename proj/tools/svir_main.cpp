#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "svir/job.hpp"

namespace {

using svir::Job;
using svir::ojson;

struct CommonOpts {
    std::string eps = "0";
    bool center = true;
    bool json_out = false;
    bool verify = false;
    std::string out_file;
    std::string job_file;
};

svir::AlgebraConfig config_of(const CommonOpts& c) {
    svir::AlgebraConfig cfg;
    if (c.eps == "0")
        cfg.eps2 = 0;
    else if (c.eps == "1/2")
        cfg.eps2 = 1;
    else
        throw svir::error("--eps must be 0 or 1/2");
    cfg.with_center = c.center;
    return cfg;
}

ojson entries_operand(const std::vector<std::string>& entry_args) {
    ojson arr = ojson::array();
    for (const auto& e : entry_args) {
        auto pos = e.find("=>");
        if (pos == std::string::npos)
            throw svir::error("entry must look like \"INPUT => OUTPUT\": " + e);
        arr.push_back(ojson{{"in", e.substr(0, pos)}, {"out", e.substr(pos + 2)}});
    }
    return arr;
}

int emit(const Job& job, const CommonOpts& common) {
    svir::Report rep = svir::run_job(job);
    std::string doc = rep.machine.dump(2) + "\n";
    if (!common.out_file.empty()) {
        std::ofstream f(common.out_file, std::ios::binary);
        if (!f) throw svir::error("cannot open output file " + common.out_file);
        f << doc;
    }
    if (common.json_out)
        std::cout << doc;
    else
        std::cout << rep.human;
    int code = rep.exit_code;
    if (common.verify) {
        std::string detail;
        bool ok = svir::verify_report(job, rep.machine, detail);
        if (!common.json_out)
            std::cout << "  verification: " << (ok ? "ok" : "FAILED: " + detail) << "\n";
        if (!ok) {
            std::cerr << "certificate verification failed: " << detail << "\n";
            code = 1;
        }
    }
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations in the super Virasoro algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOpts common;
    app.add_option("--eps", common.eps, "index grid: 0 or 1/2")->capture_default_str();
    app.add_flag("--center,!--no-center", common.center, "keep or drop the central element");
    app.add_flag("--json", common.json_out, "print the machine-readable report");
    app.add_flag("--verify", common.verify, "re-check the report's certificates");
    app.add_option("--out", common.out_file, "write the machine-readable report to a file");

    std::string lhs, rhs, xtext, vtext, image;
    std::vector<std::string> entry_args, probe_args;
    std::int64_t radius = 4, ansatz_radius = 8;
    std::string p_eps = "+1", p_a = "1", p_s = "1", p_h;

    auto* cmd_bracket = app.add_subcommand("bracket", "superbracket of two elements");
    cmd_bracket->add_option("lhs", lhs)->required();
    cmd_bracket->add_option("rhs", rhs)->required();

    auto* cmd_jacobi = app.add_subcommand("jacobi", "graded Jacobi / super-skew sweep");
    cmd_jacobi->add_option("--radius", radius)->capture_default_str();

    auto* cmd_witness = app.add_subcommand("der-witness", "solve [y, in] = out on an ansatz window");
    cmd_witness->add_option("entries", entry_args, "\"IN => OUT\"...")->required();
    cmd_witness->add_option("--ansatz-radius", ansatz_radius)->capture_default_str();

    auto* cmd_local = app.add_subcommand("der-local", "single-point witness decision");
    cmd_local->add_option("-x,--point", xtext)->required();
    cmd_local->add_option("-v,--value", vtext)->required();
    cmd_local->add_option("--ansatz-radius", ansatz_radius)->capture_default_str();

    auto* cmd_intersect = app.add_subcommand("der-intersect", "intersect probe images");
    cmd_intersect->add_option("--probe", probe_args, "probe element (repeatable)")->required();
    cmd_intersect->add_option("--radius", radius)->capture_default_str();
    std::int64_t opt_ansatz = -1;
    cmd_intersect->add_option("--ansatz-radius", opt_ansatz, "default: radius + max probe degree");

    auto* cmd_pipeline = app.add_subcommand("der-pipeline", "inner-witness normalization pipeline");
    cmd_pipeline->add_option("entries", entry_args, "\"IN => OUT\"...")->required();
    cmd_pipeline->add_option("--ansatz-radius", ansatz_radius)->capture_default_str();

    auto* cmd_apply = app.add_subcommand("aut-apply", "apply a family automorphism");
    cmd_apply->add_option("x", xtext)->required();
    cmd_apply->add_option("--aut-eps", p_eps, "+1 or -1")->capture_default_str();
    cmd_apply->add_option("-a,--aut-a", p_a)->capture_default_str();
    cmd_apply->add_option("-s,--aut-s", p_s)->capture_default_str();
    cmd_apply->add_option("-H,--aut-h", p_h, "required on the 1/2 grid");

    auto* cmd_fit = app.add_subcommand("aut-fit", "fit family members sending x to image");
    cmd_fit->add_option("-x,--point", xtext)->required();
    cmd_fit->add_option("--image", image)->required();

    auto* cmd_check = app.add_subcommand("aut-check", "bracket-preservation check of a map table");
    cmd_check->add_option("entries", entry_args, "\"IN => OUT\"...")->required();
    cmd_check->add_option("--radius", radius)->capture_default_str();

    auto* cmd_autlocal = app.add_subcommand("aut-local", "local-automorphism decision over a probe table");
    cmd_autlocal->add_option("entries", entry_args, "\"IN => OUT\"...")->required();
    cmd_autlocal->add_option("--radius", radius)->capture_default_str();

    auto* cmd_2local = app.add_subcommand("aut-2local", "pairwise recovery against an oracle table");
    cmd_2local->add_option("entries", entry_args, "\"IN => OUT\"...")->required();

    auto* cmd_run = app.add_subcommand("run", "run a job file");
    cmd_run->add_option("--job", common.job_file, "job document")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage errors
    }

    try {
        Job job;
        if (app.got_subcommand(cmd_run)) {
            std::ifstream f(common.job_file);
            if (!f) throw svir::error("cannot open job file " + common.job_file);
            ojson doc = ojson::parse(f);
            job = svir::job_from_json(doc);
            return emit(job, common);
        }

        job.cfg = config_of(common);
        if (app.got_subcommand(cmd_bracket)) {
            job.task = "bracket";
            job.operands = {{"lhs", lhs}, {"rhs", rhs}};
        } else if (app.got_subcommand(cmd_jacobi)) {
            job.task = "jacobi";
            job.options = {{"radius", radius}};
        } else if (app.got_subcommand(cmd_witness)) {
            job.task = "der-witness";
            job.operands = {{"entries", entries_operand(entry_args)}};
            job.options = {{"ansatz_radius", ansatz_radius}};
        } else if (app.got_subcommand(cmd_local)) {
            job.task = "der-local";
            job.operands = {{"x", xtext}, {"v", vtext}};
            job.options = {{"ansatz_radius", ansatz_radius}};
        } else if (app.got_subcommand(cmd_intersect)) {
            job.task = "der-intersect";
            ojson probes = ojson::array();
            for (const auto& p : probe_args) probes.push_back(p);
            job.operands = {{"probes", probes}};
            job.options = {{"radius", radius}};
            if (opt_ansatz >= 0) job.options["ansatz_radius"] = opt_ansatz;
        } else if (app.got_subcommand(cmd_pipeline)) {
            job.task = "der-pipeline";
            job.operands = {{"entries", entries_operand(entry_args)}};
            job.options = {{"ansatz_radius", ansatz_radius}};
        } else if (app.got_subcommand(cmd_apply)) {
            job.task = "aut-apply";
            ojson params = {{"eps", p_eps}, {"a", p_a}, {"s", p_s}};
            params["h"] = p_h.empty() ? ojson(nullptr) : ojson(p_h);
            job.operands = {{"params", params}, {"x", xtext}};
        } else if (app.got_subcommand(cmd_fit)) {
            job.task = "aut-fit";
            job.operands = {{"x", xtext}, {"image", image}};
        } else if (app.got_subcommand(cmd_check)) {
            job.task = "aut-check";
            job.operands = {{"entries", entries_operand(entry_args)}};
            job.options = {{"radius", radius}};
        } else if (app.got_subcommand(cmd_autlocal)) {
            job.task = "aut-local";
            job.operands = {{"entries", entries_operand(entry_args)}};
            job.options = {{"radius", radius}};
        } else if (app.got_subcommand(cmd_2local)) {
            job.task = "aut-2local";
            job.operands = {{"entries", entries_operand(entry_args)}};
        }
        return emit(job, common);
    } catch (const svir::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const svir::config_mismatch& e) {
        std::cerr << "config mismatch: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "job document error: " << e.what() << "\n";
        return 2;
    } catch (const svir::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
