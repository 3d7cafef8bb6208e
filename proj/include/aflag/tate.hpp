#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "aflag/cells.hpp"

namespace aflag {

/// Laurent polynomial in the Lefschetz class L with integer coefficients.
/// The class of an affine d-cell is L^d; substituting L = q counts points
/// over a field with q elements.
class TatePoly {
public:
    TatePoly() = default;
    explicit TatePoly(std::int64_t c) {
        if (c != 0) coeffs_[0] = c;
    }

    static TatePoly monomial(std::int64_t degree, std::int64_t c = 1) {
        TatePoly p;
        if (c != 0) p.coeffs_[degree] = c;
        return p;
    }

    const std::map<std::int64_t, std::int64_t>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    std::int64_t coeff(std::int64_t d) const {
        auto it = coeffs_.find(d);
        return it == coeffs_.end() ? 0 : it->second;
    }

    std::int64_t min_degree() const {
        if (coeffs_.empty()) throw std::domain_error("min_degree of zero polynomial");
        return coeffs_.begin()->first;
    }
    std::int64_t max_degree() const {
        if (coeffs_.empty()) throw std::domain_error("max_degree of zero polynomial");
        return coeffs_.rbegin()->first;
    }

    void add(std::int64_t degree, std::int64_t c) {
        if (c == 0) return;
        auto it = coeffs_.find(degree);
        if (it == coeffs_.end()) {
            coeffs_[degree] = c;
        } else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    friend TatePoly operator+(const TatePoly& a, const TatePoly& b) {
        TatePoly c = a;
        for (auto [d, v] : b.coeffs_) c.add(d, v);
        return c;
    }
    friend TatePoly operator-(const TatePoly& a, const TatePoly& b) {
        TatePoly c = a;
        for (auto [d, v] : b.coeffs_) c.add(d, -v);
        return c;
    }
    friend TatePoly operator*(const TatePoly& a, const TatePoly& b) {
        TatePoly c;
        for (auto [da, va] : a.coeffs_)
            for (auto [db, vb] : b.coeffs_) c.add(da + db, va * vb);
        return c;
    }
    TatePoly& operator+=(const TatePoly& b) { return *this = *this + b; }
    TatePoly& operator-=(const TatePoly& b) { return *this = *this - b; }
    TatePoly& operator*=(const TatePoly& b) { return *this = *this * b; }

    friend bool operator==(const TatePoly& a, const TatePoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const TatePoly& a, const TatePoly& b) { return !(a == b); }

    /// Shift every exponent by n (multiplication by L^n).
    TatePoly shifted(std::int64_t n) const {
        TatePoly p;
        for (auto [d, v] : coeffs_) p.coeffs_[d + n] = v;
        return p;
    }

    /// Exact evaluation at an integer, with overflow checks.
    std::int64_t evaluate(std::int64_t q) const {
        std::int64_t total = 0;
        for (auto [d, v] : coeffs_) {
            if (d < 0) throw std::domain_error("evaluate: negative exponent");
            std::int64_t p = 1;
            for (std::int64_t i = 0; i < d; ++i)
                if (__builtin_mul_overflow(p, q, &p)) throw std::overflow_error("evaluate: overflow");
            std::int64_t term;
            if (__builtin_mul_overflow(p, v, &term)) throw std::overflow_error("evaluate: overflow");
            if (__builtin_add_overflow(total, term, &total))
                throw std::overflow_error("evaluate: overflow");
        }
        return total;
    }

    /// Substitute 1 for the variable (sum of coefficients).
    std::int64_t sum_of_coefficients() const {
        std::int64_t s = 0;
        for (auto [d, v] : coeffs_) s += v;
        return s;
    }

    std::string str(const std::string& var = "L") const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (auto [d, v] : coeffs_) {
            if (!out.empty()) out += v < 0 ? " - " : " + ";
            else if (v < 0) out += "-";
            std::int64_t a = v < 0 ? -v : v;
            if (d == 0) {
                out += std::to_string(a);
            } else {
                if (a != 1) out += std::to_string(a) + "*";
                out += var;
                if (d != 1) out += "^" + std::to_string(d);
            }
        }
        return out;
    }

private:
    std::map<std::int64_t, std::int64_t> coeffs_;  // no zero entries stored
};

/// Grothendieck-group class of a cell-decomposed object, with the table it
/// came from kept as provenance.
struct MotiveClass {
    TatePoly poly;
    std::string provenance;
};

/// Sum of L^{d_v} over the rows of a cell table.
inline MotiveClass class_of_cell_table(const CellTable& t) {
    MotiveClass m;
    for (const auto& row : t.rows) m.poly += TatePoly::monomial(row.dim);
    m.provenance = "cell-table";
    return m;
}

/// Additivity along a closed/open decomposition: the class of the
/// down-closed subset of rows and the class of its complement.
inline std::pair<MotiveClass, MotiveClass> localization_split(const CellTable& t,
                                                              const std::vector<bool>& closed_sub) {
    if (closed_sub.size() != t.rows.size())
        throw std::invalid_argument("localization_split: subset size mismatch");
    const std::size_t n = t.rows.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (!closed_sub[j]) continue;
        for (std::size_t i = 0; i < n; ++i)
            if (t.leq[i][j] && !closed_sub[i])
                throw std::invalid_argument("localization_split: subset is not down-closed");
    }
    MotiveClass z, u;
    for (std::size_t i = 0; i < n; ++i)
        (closed_sub[i] ? z : u).poly += TatePoly::monomial(t.rows[i].dim);
    z.provenance = "closed-stratum";
    u.provenance = "open-complement";
    return {z, u};
}

/// Class of the union of all cells of dimension <= max_dim of the partial
/// flag variety of (f', f), restricted to the given length-zero components.
/// The coefficient of L^d counts the f'-orbit cells of dimension d.
inline MotiveClass truncated_flag_class(const FlagCells& fc, const Facet& left, const Facet& right,
                                        std::int64_t max_dim,
                                        const std::vector<IWElement>& omega_components,
                                        std::int64_t enum_cap = 24) {
    const AffineWeylGroup& w = fc.group();
    MotiveClass m;
    std::vector<IWElement> all = w.enumerate_by_length(max_dim, omega_components, enum_cap);
    if (left.type.empty()) {
        // Iwahori orbits: one cell per coset in W/W_f, dimension = min length
        for (const IWElement& x : all)
            if (fc.coset_min(x, right) == x) m.poly += TatePoly::monomial(w.length(x));
    } else {
        std::set<IWElement> seen;
        for (const IWElement& x : all) {
            DoubleCoset c = fc.double_coset_of(x, left, right);
            if (!seen.insert(c.min_rep).second) continue;
            std::int64_t d = fc.coset_length(c);
            if (d <= max_dim) m.poly += TatePoly::monomial(d);
        }
    }
    m.provenance = "truncated-flag";
    return m;
}

inline std::int64_t point_count(const MotiveClass& m, std::int64_t q) {
    if (q < 2) throw std::invalid_argument("point_count: q must be at least 2");
    return m.poly.evaluate(q);
}

/// Class of a product of cell decompositions.
inline MotiveClass box_product(const MotiveClass& a, const MotiveClass& b) {
    MotiveClass m;
    m.poly = a.poly * b.poly;
    m.provenance = "(" + a.provenance + ")x(" + b.provenance + ")";
    return m;
}

}  // namespace aflag
