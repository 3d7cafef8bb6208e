#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

#include "aflag/rational.hpp"

namespace aflag {

using IntVec = std::vector<std::int64_t>;

/// Row-major integer matrix, sized dynamically. Only tiny ranks appear
/// (r <= 8 for every supported group), so no effort is spent on layout.
struct IntMat {
    int rows = 0;
    int cols = 0;
    IntVec a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::int64_t& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    std::int64_t operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    friend bool operator==(const IntMat& x, const IntMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    IntVec apply(const IntVec& v) const {
        if (static_cast<int>(v.size()) != cols) throw std::invalid_argument("IntMat::apply: size");
        IntVec out(rows, 0);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    RationalPoint apply(const RationalPoint& v) const {
        if (static_cast<int>(v.size()) != cols) throw std::invalid_argument("IntMat::apply: size");
        RationalPoint out(rows);
        for (int i = 0; i < rows; ++i) {
            Rational acc;
            for (int j = 0; j < cols; ++j) acc += Rational((*this)(i, j)) * v[j];
            out[i] = acc;
        }
        return out;
    }

    /// Image of a linear functional f under the map x |-> f(M x), i.e. M^T f.
    IntVec apply_transposed(const IntVec& f) const {
        if (static_cast<int>(f.size()) != rows) throw std::invalid_argument("apply_transposed: size");
        IntVec out(cols, 0);
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i) out[j] += (*this)(i, j) * f[i];
        return out;
    }

    friend IntMat operator*(const IntMat& x, const IntMat& y) {
        if (x.cols != y.rows) throw std::invalid_argument("IntMat: product shape");
        IntMat z(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                std::int64_t v = x(i, k);
                if (v == 0) continue;
                for (int j = 0; j < y.cols; ++j) z(i, j) += v * y(k, j);
            }
        return z;
    }
};

inline std::int64_t dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline IntVec add(const IntVec& a, const IntVec& b) {
    IntVec c(a);
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return c;
}

inline IntVec sub(const IntVec& a, const IntVec& b) {
    IntVec c(a);
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return c;
}

inline IntVec scale(std::int64_t k, const IntVec& a) {
    IntVec c(a);
    for (auto& x : c) x *= k;
    return c;
}

inline bool is_zero(const IntVec& a) {
    for (auto x : a)
        if (x != 0) return false;
    return true;
}

/// Smith normal form  U * A * V = D  with U, V unimodular and D diagonal
/// with d_1 | d_2 | ... | d_k >= 1 followed by zeros. U_inv is maintained
/// alongside U so lattice-quotient classes can be lifted back.
struct SmithForm {
    IntMat d;      // diagonal form, same shape as input
    IntMat u;      // rows x rows
    IntMat u_inv;  // inverse of u
    IntMat v;      // cols x cols
    std::vector<std::int64_t> invariant_factors;  // the nonzero diagonal entries
};

inline SmithForm smith_normal_form(IntMat m) {
    const int nr = m.rows, nc = m.cols;
    SmithForm s;
    s.u = IntMat::identity(nr);
    s.u_inv = IntMat::identity(nr);
    s.v = IntMat::identity(nc);

    auto swap_rows = [&](int i, int j) {
        for (int c = 0; c < nc; ++c) std::swap(m(i, c), m(j, c));
        for (int c = 0; c < nr; ++c) std::swap(s.u(i, c), s.u(j, c));
        for (int r = 0; r < nr; ++r) std::swap(s.u_inv(r, i), s.u_inv(r, j));
    };
    auto swap_cols = [&](int i, int j) {
        for (int r = 0; r < nr; ++r) std::swap(m(r, i), m(r, j));
        for (int r = 0; r < nc; ++r) std::swap(s.v(r, i), s.v(r, j));
    };
    // row_i += k * row_j  (so u_inv col_j -= k * col_i)
    auto add_row = [&](int i, int j, std::int64_t k) {
        for (int c = 0; c < nc; ++c) m(i, c) += k * m(j, c);
        for (int c = 0; c < nr; ++c) s.u(i, c) += k * s.u(j, c);
        for (int r = 0; r < nr; ++r) s.u_inv(r, j) -= k * s.u_inv(r, i);
    };
    auto add_col = [&](int i, int j, std::int64_t k) {
        for (int r = 0; r < nr; ++r) m(r, i) += k * m(r, j);
        for (int r = 0; r < nc; ++r) s.v(r, i) += k * s.v(r, j);
    };
    auto negate_row = [&](int i) {
        for (int c = 0; c < nc; ++c) m(i, c) = -m(i, c);
        for (int c = 0; c < nr; ++c) s.u(i, c) = -s.u(i, c);
        for (int r = 0; r < nr; ++r) s.u_inv(r, i) = -s.u_inv(r, i);
    };

    int t = 0;
    while (t < nr && t < nc) {
        // find a nonzero pivot in the remaining block
        int pi = -1, pj = -1;
        std::int64_t best = 0;
        for (int i = t; i < nr; ++i)
            for (int j = t; j < nc; ++j) {
                std::int64_t v = m(i, j) < 0 ? -m(i, j) : m(i, j);
                if (v != 0 && (best == 0 || v < best)) { best = v; pi = i; pj = j; }
            }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        if (m(t, t) < 0) negate_row(t);

        bool clean = true;
        for (int i = t + 1; i < nr; ++i)
            if (m(i, t) != 0) {
                std::int64_t q = m(i, t) / m(t, t);
                add_row(i, t, -q);
                if (m(i, t) != 0) clean = false;
            }
        for (int j = t + 1; j < nc; ++j)
            if (m(t, j) != 0) {
                std::int64_t q = m(t, j) / m(t, t);
                add_col(j, t, -q);
                if (m(t, j) != 0) clean = false;
            }
        if (!clean) continue;  // smaller remainders appeared; pick pivot again

        // enforce divisibility d_t | m(i,j) for the block below
        bool divides = true;
        for (int i = t + 1; i < nr && divides; ++i)
            for (int j = t + 1; j < nc && divides; ++j)
                if (m(i, j) % m(t, t) != 0) {
                    add_row(t, i, 1);
                    divides = false;
                }
        if (!divides) continue;
        ++t;
    }

    s.d = m;
    for (int i = 0; i < std::min(nr, nc); ++i)
        if (m(i, i) != 0) s.invariant_factors.push_back(m(i, i));
    return s;
}

/// Exact solve A c = b over the rationals via Gauss elimination.
/// Returns nullopt when the system is inconsistent. A must have full
/// column rank (all uses in this library satisfy that).
inline std::optional<std::vector<Rational>> solve_exact(const IntMat& a, const IntVec& b) {
    int nr = a.rows, nc = a.cols;
    std::vector<std::vector<Rational>> aug(nr, std::vector<Rational>(nc + 1));
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nc; ++j) aug[i][j] = Rational(a(i, j));
        aug[i][nc] = Rational(b[i]);
    }
    int row = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < nc && row < nr; ++col) {
        int p = -1;
        for (int i = row; i < nr; ++i)
            if (!aug[i][col].is_zero()) { p = i; break; }
        if (p < 0) continue;
        std::swap(aug[p], aug[row]);
        Rational inv = Rational(1) / aug[row][col];
        for (int j = col; j <= nc; ++j) aug[row][j] *= inv;
        for (int i = 0; i < nr; ++i) {
            if (i == row || aug[i][col].is_zero()) continue;
            Rational f = aug[i][col];
            for (int j = col; j <= nc; ++j) aug[i][j] -= f * aug[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int i = row; i < nr; ++i)
        if (!aug[i][nc].is_zero()) return std::nullopt;
    std::vector<Rational> c(nc, Rational(0));
    for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i) c[pivot_col[i]] = aug[i][nc];
    return c;
}

}  // namespace aflag
