#pragma once

#include <functional>
#include <optional>

#include "svir/maptable.hpp"

namespace svir {

/// Parameters of the automorphism family
///   sigma(L_m) = eps a^m L_{eps m},  sigma(G_r) = s a^r G_{eps r},
///   sigma(C) = eps C,
/// with the square-root branches explicit: s^2 = eps, and on the
/// half-integer grid an extra root h with h^2 = a realizes a^r at
/// half-integers (a^r = h^{2r}). The (s, h) sign redundancy on that grid is
/// canonicalized to s in {1, i}.
struct AutParams {
    int eps = 1;
    Scalar a = Scalar(1);
    Scalar s = Scalar(1);
    std::optional<Scalar> h;

    bool operator==(const AutParams&) const = default;
};

void validate_params(const AlgebraConfig& cfg, const AutParams& p);

AutParams identity_params(const AlgebraConfig& cfg);

/// Fixes the even part, negates the odd part. A family member:
/// (1,1,-1) on the integer grid, (1,1,s=1,h=-1) on the half-integer grid.
AutParams grading_involution_params(const AlgebraConfig& cfg);

/// Canonical representative ((s,h) -> (-s,-h) is the same map on the
/// half-integer grid; pick s in {1, i}).
AutParams canonicalize(const AlgebraConfig& cfg, AutParams p);

Element apply_aut(const AlgebraConfig& cfg, const AutParams& p, const Element& x);

/// Parameters of sigma_{p1} after sigma_{p2} (apply p2 first).
AutParams compose(const AlgebraConfig& cfg, const AutParams& p1, const AutParams& p2);

AutParams invert(const AlgebraConfig& cfg, const AutParams& p);

/// Apply-table of the family member on all basis symbols within radius.
MapTable aut_table(const AlgebraConfig& cfg, const AutParams& p, std::int64_t radius);

/// The grading involution as a map table on the radius window.
MapTable grading_involution_table(const AlgebraConfig& cfg, std::int64_t radius);

struct AutCheckResult {
    bool ok = true;
    // first violating pair with both sides, when !ok
    BasisSymbol x, y;
    Element lhs;  // t([x,y])
    Element rhs;  // [t(x), t(y)]
};

/// Exact multiplicativity check t([x,y]) == [t(x), t(y)] on all basis pairs
/// within check_radius. The table must cover the window and the bracket
/// outputs (otherwise domain_insufficiency).
AutCheckResult is_automorphism_table(const MapTable& t, std::int64_t check_radius);

} // namespace svir
