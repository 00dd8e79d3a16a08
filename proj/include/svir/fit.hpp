#pragma once

#include <utility>
#include <vector>

#include "svir/automorphisms.hpp"

namespace svir {

/// Symbolic constraint state for one eps branch of a fit, expressed in the
/// primitive parameter t (t = a on the integer grid, t = h on the
/// half-integer grid): t^g = w when constrained, plus an optional tie
/// s = s_value * t^{-s_exp}.
struct FitBranch {
    int eps = 1;
    bool t_constrained = false;
    std::int64_t g = 0;  // >= 1 when constrained
    Scalar w;
    bool s_tied = false;
    Scalar s_value;
    std::int64_t s_exp = 0;
};

struct FitResult {
    std::vector<FitBranch> branches;    // structurally consistent branches
    std::vector<AutParams> candidates;  // concrete members, canonical, sorted
    bool realizable = false;            // nonempty over Q(i)
    bool infinite = false;              // some branch leaves t free
};

/// All family members agreeing with every (input |-> output) pair, as
/// symbolic branches plus enumerated concrete candidates where possible.
FitResult fit_table(const AlgebraConfig& cfg,
                    const std::vector<std::pair<Element, Element>>& entries);

FitResult fit_single(const AlgebraConfig& cfg, const Element& x, const Element& image);

/// The probe set the local decision procedure requires: L(m) for |m| <=
/// radius, L(-1)+L(1), every G(r) in radius, G(r)+L(1), adjacent
/// G(r)+G(r')+L(1) pairs, and C when the config has a center.
std::vector<Element> standard_local_probes(const AlgebraConfig& cfg, std::int64_t radius);

/// Query budget for the pairwise recovery: basis symbols, L(-1)+L(1),
/// G(r)+L(1), and adjacent pure-odd pairs G(r)+G(r').
std::vector<Element> standard_pair_budget(const AlgebraConfig& cfg, std::int64_t radius);

/// Probe/value pairs for the local and pairwise decision procedures. Unlike
/// MapTable the probes are deliberately redundant (L(1), L(-1), L(-1)+L(1),
/// G(r)+L(1), ...) and the values need not be linearly consistent - that
/// inconsistency is exactly what the procedures detect.
using ProbeTable = std::vector<std::pair<Element, Element>>;

std::optional<Element> probe_lookup(const ProbeTable& t, const Element& x);

struct LocalAutDecision {
    enum class Kind { automorphism, pointwise_failure, global_inconsistency };
    Kind kind = Kind::automorphism;
    AutParams params;                 // when kind == automorphism
    Element failing_probe;            // when kind == pointwise_failure
    std::vector<Element> witnesses;   // minimal jointly-unfittable inputs (usually 2)
};

/// Decide whether a table over the standard probe set is (the restriction
/// of) a single family member: every entry must fit pointwise, and one
/// member must reproduce the whole table. Throws domain_insufficiency when
/// probes are missing.
LocalAutDecision local_aut_decide(const AlgebraConfig& cfg, const ProbeTable& t,
                                  std::int64_t radius);

using AutOracle = std::function<Element(const Element&)>;

struct TwoLocalResult {
    enum class Kind { automorphism, pair_failure };
    Kind kind = Kind::automorphism;
    AutParams params;
    std::pair<Element, Element> failing;
    std::string reason;
};

/// Pairwise recovery: fit the value at L(1), then require one fitted
/// candidate to match the oracle on every budget element; report the
/// offending pair otherwise.
TwoLocalResult two_local_recover(const AutOracle& oracle, const AlgebraConfig& cfg,
                                 const std::vector<Element>& budget);

} // namespace svir
