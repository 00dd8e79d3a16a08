#pragma once

#include <vector>

#include "svir/element.hpp"

namespace svir {

/// Superbracket of two basis symbols, exact structure constants:
///   [L_m, L_n] = (m-n) L_{m+n} + delta_{m+n,0} (m^3-m)/12 C
///   [L_m, G_r] = (m/2 - r) G_{m+r}
///   [G_r, G_s] = 2 L_{r+s} + delta_{r+s,0} (r^2-1/4)/3 C
///   [C,  -  ] = 0
/// with the odd-even order handled by super-skew extension; central terms
/// are dropped when the config is centerless.
Element bracket_basis(const AlgebraConfig& cfg, const BasisSymbol& a, const BasisSymbol& b);

/// Bilinear extension of bracket_basis.
Element bracket(const AlgebraConfig& cfg, const Element& x, const Element& y);

struct JacobiViolation {
    BasisSymbol x, y, z;
    Element defect;
};

struct SkewViolation {
    BasisSymbol x, y;
    Element defect;
};

struct JacobiReport {
    std::vector<JacobiViolation> jacobi;
    std::vector<SkewViolation> skew;
    bool clean() const { return jacobi.empty() && skew.empty(); }
};

/// Sweep all homogeneous basis pairs/triples with |degree| <= window_radius:
/// graded Jacobi identity and super-skew-symmetry, checked exactly.
JacobiReport jacobi_report(const AlgebraConfig& cfg, std::int64_t window_radius);

/// All valid basis symbols with |doubled degree| <= 2*radius (C included when
/// the config has a center), in canonical order.
std::vector<BasisSymbol> symbols_in_radius(const AlgebraConfig& cfg, std::int64_t radius);

} // namespace svir
