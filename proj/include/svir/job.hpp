#pragma once

#include <string>

#include <json.hpp>

#include "svir/element.hpp"

namespace svir {

using ojson = nlohmann::ordered_json;

/// A self-contained batch job: config + task + operands + options.
/// Re-running the same job reproduces the report byte for byte.
struct Job {
    AlgebraConfig cfg;
    std::string task;
    ojson operands = ojson::object();
    ojson options = ojson::object();
};

struct Report {
    ojson machine;      // deterministic machine-readable document
    std::string human;  // one-screen summary
    int exit_code = 0;  // 0 ok, 1 property violated / negative decision
};

Job job_from_json(const ojson& doc);
ojson job_to_json(const Job& job);

/// Dispatch to the named task and build both report forms.
Report run_job(const Job& job);

/// Re-check the certificates embedded in a report independently of the
/// solver path that produced them (direct bracket evaluation, candidate
/// re-application, per-vector membership solves).
bool verify_report(const Job& job, const ojson& machine, std::string& detail);

inline const char* const kTasks[] = {"bracket",   "jacobi",    "der-witness", "der-local",
                                     "der-intersect", "der-pipeline", "aut-apply", "aut-fit",
                                     "aut-check", "aut-local", "aut-2local"};

} // namespace svir
