#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "svir/linalg.hpp"

namespace svir {

/// A partial linear map given by its values on finitely many elements.
/// Inputs must be linearly independent (checked at construction). Applying
/// the table to an element expresses it in the inputs exactly; elements
/// outside the span raise domain_insufficiency.
struct MapTable {
    AlgebraConfig cfg;
    std::vector<std::pair<Element, Element>> entries;
    std::optional<Parity> declared_parity;

    MapTable(AlgebraConfig c, std::vector<std::pair<Element, Element>> es,
             std::optional<Parity> parity = std::nullopt);

    /// Window spanned by the input supports.
    Window inputs_window() const;

    Element apply(const Element& x) const;

    /// Exact-match lookup (used by oracle-style tables).
    std::optional<Element> lookup(const Element& x) const;

    bool has_basis_input(const BasisSymbol& s) const;

    /// Split into (even, odd) homogeneous parts; inputs must be
    /// parity-homogeneous. Each part keeps the same inputs with the output
    /// component of matching shifted parity.
    std::pair<MapTable, MapTable> parity_split() const;
};

/// The table of u |-> [u, x] ... as a map table on the basis symbols within
/// `radius` (an inner derivation restricted to a window).
MapTable ad_table(const AlgebraConfig& cfg, const Element& x, std::int64_t radius);

} // namespace svir
