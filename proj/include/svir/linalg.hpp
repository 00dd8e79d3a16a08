#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "svir/element.hpp"

namespace svir {

/// A finite ordered coordinate basis: distinct symbols, valid for cfg,
/// canonically sorted. Gives the bijection symbol <-> coordinate position.
struct Window {
    AlgebraConfig cfg;
    std::vector<BasisSymbol> symbols;
    std::map<BasisSymbol, std::size_t> index;

    Window() = default;
    Window(AlgebraConfig c, std::vector<BasisSymbol> syms);

    static Window radius(const AlgebraConfig& cfg, std::int64_t r);
    static Window from_set(const AlgebraConfig& cfg, const std::set<BasisSymbol>& syms);

    std::size_t size() const { return symbols.size(); }
    bool contains(const BasisSymbol& s) const { return index.count(s) != 0; }
    bool contains_support(const Element& e) const;

    /// Coordinates of an element; throws out_of_window if support escapes.
    std::vector<Scalar> coords(const Element& e) const;
    Element element(const std::vector<Scalar>& v) const;

    bool operator==(const Window& o) const { return cfg == o.cfg && symbols == o.symbols; }
};

struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Scalar> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Scalar& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    static Matrix identity(std::size_t n);
    Matrix transposed() const;
    std::vector<Scalar> mul(const std::vector<Scalar>& v) const;

    bool operator==(const Matrix&) const = default;
};

struct RrefResult {
    Matrix mat;                     // canonical reduced row echelon form
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

/// Canonical RREF over Q(i). Pivot rows are chosen by smallest entry bit
/// size to keep intermediate growth down; the result is canonical anyway.
RrefResult rref(const Matrix& m);

struct SolveResult {
    enum class Status { unique, parametrized, none };
    Status status = Status::none;
    std::vector<Scalar> particular;          // free variables set to 0
    std::vector<std::vector<Scalar>> kernel; // basis of the homogeneous space
};

/// Exact classification of {x : A x = b}.
SolveResult solve(const Matrix& a, const std::vector<Scalar>& b);

/// Basis of {x : A x = 0}, one vector per free column.
std::vector<std::vector<Scalar>> kernel_basis(const Matrix& a);

/// A subspace of the free module over a window, stored as canonical RREF
/// rows (full row rank), so equal subspaces compare equal structurally.
struct Subspace {
    Window window;
    Matrix basis;  // rank x |window|, canonical RREF

    std::size_t dim() const { return basis.rows; }

    static Subspace zero(const Window& w);
    static Subspace full(const Window& w);
    static Subspace span(const Window& w, const std::vector<Element>& gens);

    std::vector<Element> basis_elements() const;

    bool operator==(const Subspace&) const = default;
};

/// Column space of a (rows indexed by w) as a canonical subspace.
Subspace column_image(const Matrix& a, const Window& w);

/// Zassenhaus-style intersection; windows must match.
Subspace intersect(const Subspace& s1, const Subspace& s2);

Subspace subspace_sum(const Subspace& s1, const Subspace& s2);

struct MemberResult {
    bool is_member = false;
    std::vector<Scalar> coeffs;  // expression in the subspace basis when member
};

/// Exact membership; throws out_of_window if v's support escapes s.window
/// (distinct from a false verdict).
MemberResult member(const Subspace& s, const Element& v);

/// Vectors of s supported inside `sub` (a subset of s.window's symbols),
/// re-coordinatized over sub.
Subspace restrict_to(const Subspace& s, const Window& sub);

} // namespace svir
