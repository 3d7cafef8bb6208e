#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "aflag/tate.hpp"

namespace aflag {

/// Kazhdan-Lusztig and R polynomials over the quasi-Coxeter group W, with the
/// class of the intersection motive of a Schubert closure as the main client.
/// Polynomials are indexed by pairs with equal length-zero parts; across
/// distinct parts every polynomial is zero.
class KLContext {
public:
    explicit KLContext(const AffineWeylGroup& w, std::int64_t max_length = 12,
                       std::int64_t enum_cap = 24)
        : w_(w), max_length_(max_length), enum_cap_(enum_cap) {}

    const AffineWeylGroup& group() const { return w_; }
    std::int64_t max_length() const { return max_length_; }

    /// P_{v,w}; zero when v is not below w (in particular across distinct
    /// length-zero components).
    TatePoly kl_polynomial(const IWElement& v, const IWElement& w) {
        if (w_.length(w) > max_length_) throw LimitError("kl_polynomial: length cap exceeded");
        return kl(v, w);
    }

    /// R_{v,w} from the independent two-case recursion; used to verify the
    /// inversion identity satisfied by the P family.
    TatePoly r_polynomial(const IWElement& v, const IWElement& w) {
        if (w_.length(w) > max_length_) throw LimitError("r_polynomial: length cap exceeded");
        return rpoly(v, w);
    }

    /// Checks q^{l(w)-l(v)} P_{v,w}(1/q) = sum_z R_{v,z} P_{z,w} over the
    /// interval [v,w]. The left side is polynomial by the degree bound.
    bool verify_inversion_identity(const IWElement& v, const IWElement& w) {
        if (!w_.bruhat_leq(v, w)) return true;
        std::int64_t gap = w_.length(w) - w_.length(v);
        TatePoly p = kl(v, w);
        TatePoly lhs;
        for (auto [d, c] : p.coeffs()) lhs.add(gap - d, c);
        TatePoly rhs;
        for (const IWElement& z : interval(v, w)) rhs += rpoly(v, z) * kl(z, w);
        return lhs == rhs;
    }

    /// Bruhat interval [v, w] by enumeration within the component.
    std::vector<IWElement> interval(const IWElement& v, const IWElement& w) {
        std::vector<IWElement> out;
        for (const IWElement& z : lower_cone(w))
            if (w_.bruhat_leq(v, z)) out.push_back(z);
        return out;
    }

    /// All z <= w.
    std::vector<IWElement> lower_cone(const IWElement& w) {
        std::vector<IWElement> out;
        std::vector<IWElement> omega{w_.omega_part(w)};
        for (const IWElement& z : w_.enumerate_by_length(w_.length(w), omega, enum_cap_))
            if (w_.bruhat_leq(z, w)) out.push_back(z);
        return out;
    }

private:
    using Key = std::pair<IWElement, IWElement>;

    TatePoly kl(const IWElement& v, const IWElement& w) {
        std::int64_t lv = w_.length(v), lw = w_.length(w);
        if (!w_.bruhat_leq(v, w)) return TatePoly();
        if (lv == lw) return TatePoly(1);  // comparable with equal lengths means equal
        Key key{v, w};
        auto it = kl_cache_.find(key);
        if (it != kl_cache_.end()) return it->second;

        int s = left_descent(w);
        IWElement sw = w_.multiply(w_.simple_reflections()[s], w);
        IWElement sv = w_.multiply(w_.simple_reflections()[s], v);
        bool v_desc = w_.length(sv) < lv;

        // coefficient of T_v in C'_s C'_{sw}, then subtract lower terms
        TatePoly p;
        if (v_desc)
            p = kl(sv, sw) + kl(v, sw).shifted(1);
        else
            p = kl(v, sw) + kl(sv, sw).shifted(1);
        for (const IWElement& z : lower_cone(sw)) {
            if (!(w_.length(w_.multiply(w_.simple_reflections()[s], z)) < w_.length(z))) continue;
            std::int64_t m = mu(z, sw);
            if (m == 0) continue;
            if (!w_.bruhat_leq(v, z)) continue;
            std::int64_t shift = (lw - w_.length(z)) / 2;
            TatePoly corr = kl(v, z).shifted(shift);
            for (auto [d, c] : corr.coeffs()) p.add(d, -m * c);
        }

        // degree bound and unit constant term are hard invariants of the family
        if (!p.is_zero()) {
            if (2 * p.max_degree() > lw - lv - 1 && !(v == w))
                throw std::logic_error("kl: degree bound violated");
            if (p.coeff(0) != 1) throw std::logic_error("kl: constant term is not 1");
            for (auto [d, c] : p.coeffs())
                if (c < 0) throw std::logic_error("kl: negative coefficient");
        } else {
            throw std::logic_error("kl: vanishing polynomial for comparable pair");
        }
        kl_cache_.emplace(key, p);
        return p;
    }

    std::int64_t mu(const IWElement& z, const IWElement& w) {
        std::int64_t gap = w_.length(w) - w_.length(z);
        if (gap <= 0 || gap % 2 == 0) return 0;
        TatePoly p = kl(z, w);
        if (p.is_zero()) return 0;
        return p.coeff((gap - 1) / 2);
    }

    TatePoly rpoly(const IWElement& v, const IWElement& w) {
        if (!w_.bruhat_leq(v, w)) return TatePoly();
        if (v == w) return TatePoly(1);
        Key key{v, w};
        auto it = r_cache_.find(key);
        if (it != r_cache_.end()) return it->second;
        int s = left_descent(w);
        IWElement sw = w_.multiply(w_.simple_reflections()[s], w);
        IWElement sv = w_.multiply(w_.simple_reflections()[s], v);
        TatePoly out;
        if (w_.length(sv) < w_.length(v)) {
            out = rpoly(sv, sw);
        } else {
            // (q - 1) R_{v,sw} + q R_{sv,sw}
            TatePoly a = rpoly(v, sw);
            out = a.shifted(1) - a + rpoly(sv, sw).shifted(1);
        }
        r_cache_.emplace(key, out);
        return out;
    }

    int left_descent(const IWElement& w) const {
        std::int64_t l = w_.length(w);
        for (int i = 0; i < w_.simple_count(); ++i)
            if (w_.length(w_.multiply(w_.simple_reflections()[i], w)) == l - 1) return i;
        throw std::logic_error("left_descent: none (length zero?)");
    }

    const AffineWeylGroup& w_;
    std::int64_t max_length_;
    std::int64_t enum_cap_;
    std::unordered_map<Key, TatePoly, IWPairHash> kl_cache_;
    std::unordered_map<Key, TatePoly, IWPairHash> r_cache_;
};

/// Grothendieck-group class of the intersection motive supported on the
/// Schubert closure of the bound: sum over cells v <= w of
/// P_{v~, w~}(L) L^{d_v}, with v~, w~ the maximal-length representatives
/// ("max-rep-parabolic" convention; the shift [d_w] is dropped, only twists
/// survive as powers of L).
struct ICClass {
    DoubleCoset bound;
    TatePoly poly;
    std::int64_t twist = 0;
    std::string convention = "max-rep-parabolic";
};

inline ICClass ic_class(const FlagCells& fc, KLContext& kl, const CellTable& table) {
    const AffineWeylGroup& w = fc.group();
    ICClass out;
    out.bound = table.bound;
    IWElement wmax = fc.double_coset_max(table.bound);
    if (w.length(wmax) > kl.max_length()) throw LimitError("ic_class: length cap exceeded");
    for (const auto& row : table.rows) {
        IWElement vmax = fc.coset_max(row.min_rep, table.bound.right);
        TatePoly p = kl.kl_polynomial(vmax, wmax);
        if (p.is_zero()) throw std::logic_error("ic_class: cell below bound with zero polynomial");
        out.poly += p * TatePoly::monomial(row.dim);
    }
    return out;
}

inline ICClass twist(ICClass c, std::int64_t n) {
    c.poly = c.poly.shifted(n);
    c.twist += n;
    return c;
}

}  // namespace aflag
