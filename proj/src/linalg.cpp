#include "svir/linalg.hpp"

#include <algorithm>

#include "svir/algebra.hpp"

namespace svir {

Window::Window(AlgebraConfig c, std::vector<BasisSymbol> syms) : cfg(c), symbols(std::move(syms)) {
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        validate_symbol(cfg, symbols[i]);
        index.emplace(symbols[i], i);
    }
}

Window Window::radius(const AlgebraConfig& cfg, std::int64_t r) {
    return Window(cfg, symbols_in_radius(cfg, r));
}

Window Window::from_set(const AlgebraConfig& cfg, const std::set<BasisSymbol>& syms) {
    return Window(cfg, std::vector<BasisSymbol>(syms.begin(), syms.end()));
}

bool Window::contains_support(const Element& e) const {
    for (const auto& [s, c] : e.terms) {
        (void)c;
        if (!contains(s)) return false;
    }
    return true;
}

std::vector<Scalar> Window::coords(const Element& e) const {
    std::vector<Scalar> v(symbols.size());
    for (const auto& [s, c] : e.terms) {
        auto it = index.find(s);
        if (it == index.end())
            throw out_of_window("element support escapes window at " + s.str());
        v[it->second] = c;
    }
    return v;
}

Element Window::element(const std::vector<Scalar>& v) const {
    if (v.size() != symbols.size()) throw dimension_mismatch("coordinate size != window size");
    Element e;
    for (std::size_t i = 0; i < v.size(); ++i) e.add_term(symbols[i], v[i]);
    return e;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols, rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
}

std::vector<Scalar> Matrix::mul(const std::vector<Scalar>& v) const {
    if (v.size() != cols) throw dimension_mismatch("matrix * vector size mismatch");
    std::vector<Scalar> out(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        Scalar acc(0);
        for (std::size_t c = 0; c < cols; ++c)
            if (!at(r, c).is_zero() && !v[c].is_zero()) acc += at(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

RrefResult rref(const Matrix& m) {
    RrefResult res;
    res.mat = m;
    Matrix& a = res.mat;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols && row < a.rows; ++col) {
        // pivot: nonzero entry of smallest bit size in this column
        std::size_t best = a.rows;
        std::size_t best_bits = 0;
        for (std::size_t r = row; r < a.rows; ++r) {
            if (a.at(r, col).is_zero()) continue;
            std::size_t bits = scalar_bits(a.at(r, col));
            if (best == a.rows || bits < best_bits) {
                best = r;
                best_bits = bits;
            }
        }
        if (best == a.rows) continue;
        if (best != row)
            for (std::size_t c = 0; c < a.cols; ++c) std::swap(a.at(row, c), a.at(best, c));
        Scalar inv = a.at(row, col).inv();
        for (std::size_t c = col; c < a.cols; ++c) a.at(row, c) *= inv;
        for (std::size_t r = 0; r < a.rows; ++r) {
            if (r == row || a.at(r, col).is_zero()) continue;
            Scalar f = a.at(r, col);
            for (std::size_t c = col; c < a.cols; ++c) a.at(r, c) -= f * a.at(row, c);
        }
        res.pivots.push_back(col);
        ++row;
    }
    res.rank = row;
    return res;
}

std::vector<std::vector<Scalar>> kernel_basis(const Matrix& a) {
    RrefResult r = rref(a);
    std::vector<bool> is_pivot(a.cols, false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<std::vector<Scalar>> out;
    for (std::size_t free = 0; free < a.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(a.cols);
        v[free] = Scalar(1);
        for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.mat.at(i, free);
        out.push_back(std::move(v));
    }
    return out;
}

SolveResult solve(const Matrix& a, const std::vector<Scalar>& b) {
    if (b.size() != a.rows) throw dimension_mismatch("rhs size != row count");
    Matrix aug(a.rows, a.cols + 1);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols) = b[r];
    }
    RrefResult rr = rref(aug);
    SolveResult res;
    for (auto p : rr.pivots)
        if (p == a.cols) {
            res.status = SolveResult::Status::none;
            return res;
        }
    res.particular.assign(a.cols, Scalar(0));
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
        res.particular[rr.pivots[i]] = rr.mat.at(i, a.cols);
    res.kernel = kernel_basis(a);
    res.status = res.kernel.empty() ? SolveResult::Status::unique : SolveResult::Status::parametrized;
    return res;
}

static Matrix canonical_rows(std::vector<std::vector<Scalar>> rows, std::size_t ncols) {
    Matrix m(rows.size(), ncols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < ncols; ++c) m.at(r, c) = rows[r][c];
    RrefResult rr = rref(m);
    Matrix out(rr.rank, ncols);
    for (std::size_t r = 0; r < rr.rank; ++r)
        for (std::size_t c = 0; c < ncols; ++c) out.at(r, c) = rr.mat.at(r, c);
    return out;
}

Subspace Subspace::zero(const Window& w) {
    Subspace s;
    s.window = w;
    s.basis = Matrix(0, w.size());
    return s;
}

Subspace Subspace::full(const Window& w) {
    Subspace s;
    s.window = w;
    s.basis = Matrix::identity(w.size());
    return s;
}

Subspace Subspace::span(const Window& w, const std::vector<Element>& gens) {
    std::vector<std::vector<Scalar>> rows;
    rows.reserve(gens.size());
    for (const auto& g : gens) rows.push_back(w.coords(g));
    Subspace s;
    s.window = w;
    s.basis = canonical_rows(std::move(rows), w.size());
    return s;
}

std::vector<Element> Subspace::basis_elements() const {
    std::vector<Element> out;
    out.reserve(basis.rows);
    for (std::size_t r = 0; r < basis.rows; ++r) {
        std::vector<Scalar> row(basis.cols);
        for (std::size_t c = 0; c < basis.cols; ++c) row[c] = basis.at(r, c);
        out.push_back(window.element(row));
    }
    return out;
}

Subspace column_image(const Matrix& a, const Window& w) {
    if (a.rows != w.size()) throw dimension_mismatch("column_image: row count != window size");
    std::vector<std::vector<Scalar>> rows;
    rows.reserve(a.cols);
    for (std::size_t c = 0; c < a.cols; ++c) {
        std::vector<Scalar> row(a.rows);
        for (std::size_t r = 0; r < a.rows; ++r) row[r] = a.at(r, c);
        rows.push_back(std::move(row));
    }
    Subspace s;
    s.window = w;
    s.basis = canonical_rows(std::move(rows), w.size());
    return s;
}

Subspace intersect(const Subspace& s1, const Subspace& s2) {
    if (!(s1.window == s2.window)) throw dimension_mismatch("intersect: window mismatch");
    const std::size_t n = s1.window.size();
    // Zassenhaus: rref of [U U; W 0]; rows with zero left half span the
    // intersection on the right half.
    Matrix big(s1.basis.rows + s2.basis.rows, 2 * n);
    for (std::size_t r = 0; r < s1.basis.rows; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            big.at(r, c) = s1.basis.at(r, c);
            big.at(r, n + c) = s1.basis.at(r, c);
        }
    for (std::size_t r = 0; r < s2.basis.rows; ++r)
        for (std::size_t c = 0; c < n; ++c) big.at(s1.basis.rows + r, c) = s2.basis.at(r, c);
    RrefResult rr = rref(big);
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t r = 0; r < rr.rank; ++r) {
        bool left_zero = true;
        for (std::size_t c = 0; c < n && left_zero; ++c)
            if (!rr.mat.at(r, c).is_zero()) left_zero = false;
        if (!left_zero) continue;
        std::vector<Scalar> row(n);
        for (std::size_t c = 0; c < n; ++c) row[c] = rr.mat.at(r, n + c);
        rows.push_back(std::move(row));
    }
    Subspace s;
    s.window = s1.window;
    s.basis = canonical_rows(std::move(rows), n);
    return s;
}

Subspace subspace_sum(const Subspace& s1, const Subspace& s2) {
    if (!(s1.window == s2.window)) throw dimension_mismatch("sum: window mismatch");
    const std::size_t n = s1.window.size();
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t r = 0; r < s1.basis.rows; ++r) {
        std::vector<Scalar> row(n);
        for (std::size_t c = 0; c < n; ++c) row[c] = s1.basis.at(r, c);
        rows.push_back(std::move(row));
    }
    for (std::size_t r = 0; r < s2.basis.rows; ++r) {
        std::vector<Scalar> row(n);
        for (std::size_t c = 0; c < n; ++c) row[c] = s2.basis.at(r, c);
        rows.push_back(std::move(row));
    }
    Subspace s;
    s.window = s1.window;
    s.basis = canonical_rows(std::move(rows), n);
    return s;
}

MemberResult member(const Subspace& s, const Element& v) {
    std::vector<Scalar> x = s.window.coords(v);  // throws out_of_window
    // Reduce against the RREF rows; the multipliers are the coefficients.
    MemberResult res;
    res.coeffs.assign(s.basis.rows, Scalar(0));
    // basis is canonical RREF: pivot of row r is the first nonzero column.
    for (std::size_t r = 0; r < s.basis.rows; ++r) {
        std::size_t p = 0;
        while (p < s.basis.cols && s.basis.at(r, p).is_zero()) ++p;
        Scalar f = x[p];
        if (f.is_zero()) continue;
        res.coeffs[r] = f;
        for (std::size_t c = p; c < s.basis.cols; ++c) x[c] -= f * s.basis.at(r, c);
    }
    for (const auto& e : x)
        if (!e.is_zero()) {
            res.is_member = false;
            res.coeffs.clear();
            return res;
        }
    res.is_member = true;
    return res;
}

Subspace restrict_to(const Subspace& s, const Window& sub) {
    for (const auto& sym : sub.symbols)
        if (!s.window.contains(sym))
            throw dimension_mismatch("restrict_to: sub-window not inside window");
    // Coefficient combinations of basis rows vanishing on the outside columns.
    std::vector<std::size_t> outside;
    for (std::size_t c = 0; c < s.window.size(); ++c)
        if (!sub.contains(s.window.symbols[c])) outside.push_back(c);
    Matrix constraint(outside.size(), s.basis.rows);
    for (std::size_t i = 0; i < outside.size(); ++i)
        for (std::size_t r = 0; r < s.basis.rows; ++r)
            constraint.at(i, r) = s.basis.at(r, outside[i]);
    auto combos = kernel_basis(constraint);
    std::vector<std::vector<Scalar>> rows;
    for (const auto& combo : combos) {
        std::vector<Scalar> row(sub.size());
        for (std::size_t c = 0; c < sub.size(); ++c) {
            std::size_t big_c = s.window.index.at(sub.symbols[c]);
            Scalar acc(0);
            for (std::size_t r = 0; r < s.basis.rows; ++r)
                if (!combo[r].is_zero()) acc += combo[r] * s.basis.at(r, big_c);
            row[c] = acc;
        }
        rows.push_back(std::move(row));
    }
    Subspace out;
    out.window = sub;
    out.basis = canonical_rows(std::move(rows), sub.size());
    return out;
}

} // namespace svir
