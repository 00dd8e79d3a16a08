#pragma once

#include <string>

#include "svir/element.hpp"

namespace svir {

/// Canonical scalar text: `p/q`, `2i`, `1/2i`, `1+2i`, `1-i`, `0`.
std::string scalar_text(const Scalar& s);

/// Canonical element text: terms in (kind, index) order, zero terms and
/// `1*` elided, integer coefficients bare, fractional/complex coefficients
/// parenthesized; the zero element prints as `0`.
std::string element_text(const Element& e);

/// Doubled degree as human text ("3", "-1/2").
std::string degree2_text(std::int64_t d2);

/// Parse a standalone scalar (optionally parenthesized).
Scalar parse_scalar(const std::string& text);

/// Parse an element against a config's grid. Grammar:
///   element := ['-'] term (('+'|'-') term)*
///   term    := [coeff '*'] gen | coeff          (bare coeff must be 0)
///   gen     := 'L(' int ')' | 'G(' int ['/2'] ')' | 'C'
///   coeff   := rational | '(' complex ')'
/// Throws parse_error with a position, or config_mismatch for symbols off
/// the config's grid.
Element parse_element(const AlgebraConfig& cfg, const std::string& text);

} // namespace svir
