#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "svir/errors.hpp"

namespace svir {

enum class Kind : std::uint8_t { L = 0, G = 1, C = 2 };

enum class Parity : std::uint8_t { even = 0, odd = 1 };

/// Which algebra we are working in: epsilon selects the G-index grid
/// (integers for eps2=0, half-integers for eps2=1), with_center=false is the
/// centerless quotient.
struct AlgebraConfig {
    int eps2 = 0;            // doubled epsilon: 0 or 1
    bool with_center = true;

    bool operator==(const AlgebraConfig&) const = default;

    std::string describe() const {
        std::string s = eps2 == 0 ? "eps=0" : "eps=1/2";
        s += with_center ? ", center on" : ", centerless";
        return s;
    }
};

/// One basis symbol L(m), G(r) or C. Indices are stored doubled (d = 2m, 2r)
/// so both index grids are integral; d's parity tells the grids apart.
struct BasisSymbol {
    Kind kind = Kind::L;
    std::int64_t d = 0;  // doubled index; 0 for C

    static BasisSymbol L(std::int64_t m) { return {Kind::L, 2 * m}; }
    static BasisSymbol G2(std::int64_t doubled_r) { return {Kind::G, doubled_r}; }
    static BasisSymbol C() { return {Kind::C, 0}; }

    Parity parity() const { return kind == Kind::G ? Parity::odd : Parity::even; }
    /// Doubled degree (degree is d/2; C sits in degree 0).
    std::int64_t degree2() const { return kind == Kind::C ? 0 : d; }

    auto operator<=>(const BasisSymbol&) const = default;

    std::string str() const;
};

inline bool symbol_valid(const AlgebraConfig& cfg, const BasisSymbol& s) {
    switch (s.kind) {
        case Kind::L: return s.d % 2 == 0;
        case Kind::G: return ((s.d % 2) + 2) % 2 == cfg.eps2;
        case Kind::C: return s.d == 0 && cfg.with_center;
    }
    return false;
}

inline void validate_symbol(const AlgebraConfig& cfg, const BasisSymbol& s) {
    if (!symbol_valid(cfg, s))
        throw config_mismatch("symbol " + s.str() + " is not valid for " + cfg.describe());
}

} // namespace svir
