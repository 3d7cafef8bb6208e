#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "aflag/root_datum.hpp"

namespace aflag {

/// Enumeration limits were exceeded (see AFL_MAX_LEN).
struct LimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Element of the finite Weyl group W_0, stored as its action matrix on
/// X_*(T) together with the inverse so both lattice actions are cheap.
struct FiniteWeyl {
    IntMat fwd;
    IntMat inv;

    friend bool operator==(const FiniteWeyl& x, const FiniteWeyl& y) { return x.fwd == y.fwd; }
    friend bool operator<(const FiniteWeyl& x, const FiniteWeyl& y) { return x.fwd.a < y.fwd.a; }
};

/// Element of the extended affine Weyl group W = X_*(T) x| W_0 as the pair
/// (translation, finite part); (l1,w1)(l2,w2) = (l1 + w1.l2, w1 w2).
struct IWElement {
    Cocharacter t;
    FiniteWeyl w;

    friend bool operator==(const IWElement& x, const IWElement& y) {
        return x.t == y.t && x.w == y.w;
    }
    friend bool operator<(const IWElement& x, const IWElement& y) {
        return std::tie(x.t, x.w.fwd.a) < std::tie(y.t, y.w.fwd.a);
    }
};

struct IWElementHash {
    std::size_t operator()(const IWElement& e) const {
        std::size_t h = 1469598103934665603ull;
        auto mix = [&](std::int64_t v) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        };
        for (auto v : e.t) mix(v);
        for (auto v : e.w.fwd.a) mix(v);
        return h;
    }
};

struct IWPairHash {
    std::size_t operator()(const std::pair<IWElement, IWElement>& p) const {
        IWElementHash h;
        return h(p.first) * 1000003u ^ h(p.second);
    }
};

/// Affine root a + k: a finite root (signed index into the positive list)
/// plus an integer level.
struct AffineRoot {
    int finite;         // +(i+1) / -(i+1) for +/- positive_roots[i]
    std::int64_t level;

    friend bool operator==(const AffineRoot& x, const AffineRoot& y) {
        return x.finite == y.finite && x.level == y.level;
    }
    friend bool operator<(const AffineRoot& x, const AffineRoot& y) {
        return std::tie(x.finite, x.level) < std::tie(y.finite, y.level);
    }
};

/// The extended affine Weyl group of a root datum, acting on the apartment
/// A = X_*(T) (x) R by (l,v).x = v.x + l, together with its quasi-Coxeter
/// structure: simple affine reflections S, length, reduced words, Bruhat
/// order and breadth-first enumeration.
class AffineWeylGroup {
public:
    explicit AffineWeylGroup(RootDatum rd) : rd_(std::move(rd)) {
        if (rd_.semisimple_rank() > 0) init_simple_reflections();
    }

    const RootDatum& datum() const { return rd_; }
    int rank() const { return rd_.rank; }

    // ---- group structure -------------------------------------------------

    IWElement identity() const {
        IWElement e;
        e.t.assign(rd_.rank, 0);
        e.w.fwd = IntMat::identity(rd_.rank);
        e.w.inv = e.w.fwd;
        return e;
    }

    IWElement multiply(const IWElement& x, const IWElement& y) const {
        IWElement z;
        z.t = add(x.t, x.w.fwd.apply(y.t));
        z.w.fwd = x.w.fwd * y.w.fwd;
        z.w.inv = y.w.inv * x.w.inv;
        return z;
    }

    IWElement inverse(const IWElement& x) const {
        IWElement z;
        z.w.fwd = x.w.inv;
        z.w.inv = x.w.fwd;
        z.t = scale(-1, x.w.inv.apply(x.t));
        return z;
    }

    IWElement translation(const Cocharacter& lambda) const {
        IWElement e = identity();
        e.t = lambda;
        return e;
    }

    /// Finite simple reflection s_i as an element of W.
    IWElement finite_reflection(int i) const {
        IWElement e = identity();
        IntMat m = IntMat::identity(rd_.rank);
        // x |-> x - <a_i, x> a_i^vee
        for (int r = 0; r < rd_.rank; ++r)
            for (int c = 0; c < rd_.rank; ++c)
                m(r, c) -= rd_.simple_coroots[i][r] * rd_.simple_roots[i][c];
        e.w.fwd = m;
        e.w.inv = m;  // reflections are involutions
        return e;
    }

    /// Reflection along the vanishing hyperplane of an affine root:
    /// s_alpha(x) = x - alpha(x) a^vee.
    IWElement reflection(const AffineRoot& alpha) const {
        const Root& r = rd_.positive_root(std::abs(alpha.finite) - 1);
        IntVec a = alpha.finite > 0 ? r.root : scale(-1, r.root);
        IntVec av = alpha.finite > 0 ? r.coroot : scale(-1, r.coroot);
        IWElement e = identity();
        IntMat m = IntMat::identity(rd_.rank);
        for (int i = 0; i < rd_.rank; ++i)
            for (int j = 0; j < rd_.rank; ++j) m(i, j) -= av[i] * a[j];
        e.w.fwd = m;
        e.w.inv = m;
        e.t = scale(-alpha.level, av);
        return e;
    }

    // ---- actions ----------------------------------------------------------

    RationalPoint act_on_apartment(const IWElement& w, const RationalPoint& x) const {
        RationalPoint y = w.w.fwd.apply(x);
        for (int i = 0; i < rd_.rank; ++i) y[i] += Rational(w.t[i]);
        return y;
    }

    /// w.alpha defined by (w.alpha)(x) = alpha(w^{-1} x).
    AffineRoot act_on_affine_root(const IWElement& w, const AffineRoot& alpha) const {
        const Root& r = rd_.positive_root(std::abs(alpha.finite) - 1);
        IntVec a = alpha.finite > 0 ? r.root : scale(-1, r.root);
        // image functional b = a o w^{-1}: on the linear part this is
        // (w.inv)^T a; the level picks up -<b, t>.
        IntVec b = w.w.inv.apply_transposed(a);
        int idx = rd_.root_lookup(b);
        if (idx == 0) throw std::logic_error("act_on_affine_root: image not a root");
        AffineRoot out;
        out.finite = idx;
        out.level = alpha.level - dot(b, w.t);
        return out;
    }

    IntVec affine_root_functional(const AffineRoot& alpha) const {
        const Root& r = rd_.positive_root(std::abs(alpha.finite) - 1);
        return alpha.finite > 0 ? r.root : scale(-1, r.root);
    }

    Rational evaluate(const AffineRoot& alpha, const RationalPoint& x) const {
        return pair_with(affine_root_functional(alpha), x) + Rational(alpha.level);
    }

    // ---- alcove geometry ---------------------------------------------------

    /// Interior point of the base alcove: sum over components of
    /// rho_c^vee / (2 h_c), h_c the Coxeter number. Every positive root takes
    /// a value in (0,1) there, so one exact evaluation decides positivity of
    /// an affine root on the whole alcove.
    const RationalPoint& base_alcove_point() const { return x0_; }

    bool positive_on_base_alcove(const AffineRoot& alpha) const {
        // the finite part takes a value in (0,1) at x0, so one evaluation decides
        Rational v = root_value_at_x0_[std::abs(alpha.finite) - 1];
        if (alpha.finite < 0) v = -v;
        v += Rational(alpha.level);
        return v.sign() > 0;
    }

    /// The simple affine reflections S: per irreducible component, the finite
    /// simple reflections (walls a_i = 0) followed by the reflection in the
    /// wall -theta + 1 = 0 of the highest root theta.
    const std::vector<IWElement>& simple_reflections() const {
        require_semisimple();
        return simple_refs_;
    }

    const std::vector<AffineRoot>& simple_affine_roots() const {
        require_semisimple();
        return simple_affine_roots_;
    }

    /// Display name ("s1", "s2", ..., "s0" / "s0.c") per index into S.
    std::string simple_reflection_name(int idx) const {
        require_semisimple();
        return simple_names_[static_cast<std::size_t>(idx)];
    }

    int simple_count() const { return static_cast<int>(simple_refs_.size()); }

    /// Indices into S of the finite simple reflections, in simple-root order.
    const std::vector<int>& finite_simple_indices() const { return finite_indices_; }

    // ---- length, words, order ----------------------------------------------

    /// Inversion-count length: the number of affine roots positive on the
    /// base alcove that w maps to roots negative on it. Independent of the
    /// generator-word implementation (enumerate_by_length gives the oracle).
    std::int64_t length(const IWElement& w) const {
        std::int64_t total = 0;
        const int npos = static_cast<int>(rd_.positive_roots.size());
        for (int sgn = 0; sgn < 2; ++sgn) {
            for (int i = 0; i < npos; ++i) {
                int finite = (sgn == 0) ? (i + 1) : -(i + 1);
                // positive affine roots with this finite part have level >= kmin
                std::int64_t kmin = (sgn == 0) ? 0 : 1;
                IntVec a = affine_root_functional({finite, 0});
                IntVec b = w.w.inv.apply_transposed(a);
                int bidx = rd_.root_lookup(b);
                if (bidx == 0) throw std::logic_error("length: image not a root");
                // image level is k - <b, t>; negativity means level <= -1 for a
                // positive finite part and <= 0 for a negative one
                std::int64_t kmax = dot(b, w.t) + (bidx > 0 ? -1 : 0);
                if (kmax >= kmin) total += kmax - kmin + 1;
            }
        }
        return total;
    }

    bool stabilizes_base_alcove(const IWElement& w) const {
        if (rd_.semisimple_rank() == 0) return true;
        RationalPoint y = act_on_apartment(w, x0_);
        for (const AffineRoot& alpha : simple_affine_roots_)
            if (evaluate(alpha, y).sign() <= 0) return false;
        return true;
    }

    /// Reduced decomposition w = s_{is[0]} * ... * s_{is[q-1]} * tau with tau
    /// of length zero; the smallest-index left descent is taken at each step.
    std::pair<std::vector<int>, IWElement> reduced_word(IWElement w) const {
        std::vector<int> word;
        std::int64_t l = length(w);
        while (l > 0) {
            bool found = false;
            for (int i = 0; i < simple_count(); ++i) {
                IWElement cand = multiply(simple_refs_[i], w);
                std::int64_t lc = length(cand);
                if (lc == l - 1) {
                    word.push_back(i);
                    w = std::move(cand);
                    l = lc;
                    found = true;
                    break;
                }
            }
            if (!found) throw std::logic_error("reduced_word: no descent found");
        }
        return {word, w};
    }

    /// pi1 class of w (the translation part determines it).
    IntVec omega_class(const IWElement& w) const { return pi1_class(rd_, w.t); }

    /// Canonical length-zero element with the given pi1 class.
    IWElement omega_element(const IntVec& cls) const {
        Cocharacter lift = pi1_lift(rd_, cls);
        IWElement w = translation(lift);
        // strip to length zero by left descents
        std::int64_t l = length(w);
        while (l > 0) {
            bool found = false;
            for (int i = 0; i < simple_count(); ++i) {
                IWElement cand = multiply(simple_refs_[i], w);
                std::int64_t lc = length(cand);
                if (lc == l - 1) {
                    w = std::move(cand);
                    l = lc;
                    found = true;
                    break;
                }
            }
            if (!found) throw std::logic_error("omega_element: stuck above length 0");
        }
        return w;
    }

    IWElement omega_part(const IWElement& w) const { return omega_element(omega_class(w)); }

    /// Bruhat-Chevalley order on W: false across distinct length-zero parts,
    /// standard descent recursion within a part.
    bool bruhat_leq(const IWElement& v, const IWElement& w) const {
        if (omega_class(v) != omega_class(w)) return false;
        return bruhat_leq_graded(v, w, length(v), length(w), nullptr);
    }

    /// Same relation, but the caller provides a private memo table; safe for
    /// concurrent use (results identical with or without the cache).
    bool bruhat_leq_cached(
        const IWElement& v, const IWElement& w,
        std::unordered_map<std::pair<IWElement, IWElement>, bool, IWPairHash>& memo) const {
        if (omega_class(v) != omega_class(w)) return false;
        return bruhat_leq_graded(v, w, length(v), length(w), &memo);
    }

    /// Literal subword oracle: the set of all products of subwords of one
    /// reduced word of w (times tau_w) is exactly the lower Bruhat interval.
    std::vector<IWElement> bruhat_interval_by_subwords(const IWElement& w) const {
        auto [word, tau] = reduced_word(w);
        std::size_t q = word.size();
        if (q > 24) throw LimitError("bruhat_interval_by_subwords: word too long");
        std::vector<IWElement> out;
        std::unordered_map<IWElement, bool, IWElementHash> seen;
        for (std::size_t mask = 0; mask < (std::size_t{1} << q); ++mask) {
            IWElement p = identity();
            for (std::size_t i = 0; i < q; ++i)
                if (mask & (std::size_t{1} << i)) p = multiply(p, simple_refs_[word[i]]);
            p = multiply(p, tau);
            if (!seen.count(p)) {
                seen.emplace(p, true);
                out.push_back(p);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// All elements of length <= max_len whose length-zero part lies in the
    /// given set, sorted canonically. Pure breadth-first search over S.
    std::vector<IWElement> enumerate_by_length(std::int64_t max_len,
                                               const std::vector<IWElement>& omega_components,
                                               std::int64_t hard_cap = 24) const {
        if (max_len < 0) throw std::invalid_argument("enumerate_by_length: negative bound");
        if (max_len > hard_cap) throw LimitError("enumerate_by_length: bound exceeds cap");
        const auto& levels = affine_levels(max_len);
        std::vector<IWElement> out;
        for (const IWElement& tau : omega_components) {
            if (length(tau) != 0)
                throw std::invalid_argument("enumerate_by_length: component of nonzero length");
            for (std::int64_t l = 0; l <= max_len; ++l)
                for (const IWElement& wa : levels[static_cast<std::size_t>(l)])
                    out.push_back(multiply(wa, tau));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Breadth-first word length within W_aff x tau (the independent length
    /// oracle; agrees with the inversion count).
    std::int64_t bfs_length(const IWElement& w) const {
        IWElement tau = omega_part(w);
        IWElement wa = multiply(w, inverse(tau));
        std::int64_t cap = length(wa) + 2;  // generous; oracle search is exact
        const auto& levels = affine_levels(cap);
        for (std::size_t l = 0; l < levels.size(); ++l)
            for (const IWElement& x : levels[l])
                if (x == wa) return static_cast<std::int64_t>(l);
        throw std::logic_error("bfs_length: element not reached");
    }

    /// Conjugation action of a length-zero element on S as an index
    /// permutation, computed from the action on the simple affine roots.
    std::vector<int> omega_permutation(const IWElement& tau) const {
        require_semisimple();
        std::vector<int> perm(simple_refs_.size());
        for (std::size_t i = 0; i < simple_affine_roots_.size(); ++i) {
            AffineRoot img = act_on_affine_root(tau, simple_affine_roots_[i]);
            auto it = std::find(simple_affine_roots_.begin(), simple_affine_roots_.end(), img);
            if (it == simple_affine_roots_.end())
                throw std::logic_error("omega_permutation: image is not a simple affine root");
            perm[i] = static_cast<int>(it - simple_affine_roots_.begin());
        }
        return perm;
    }

    // ---- serialization helpers ----------------------------------------------

    /// Canonical word of the finite part in the finite simple reflections.
    std::vector<int> finite_word(const FiniteWeyl& v) const {
        std::vector<int> word;
        FiniteWeyl cur = v;
        IntMat id = IntMat::identity(rd_.rank);
        while (!(cur.fwd == id)) {
            bool found = false;
            for (int i = 0; i < rd_.semisimple_rank(); ++i) {
                // descent iff cur maps a_i to a negative root
                IntVec img = cur.inv.apply_transposed(rd_.simple_roots[i]);
                int idx = rd_.root_lookup(img);
                if (idx == 0) throw std::logic_error("finite_word: no root image");
                if (idx < 0) {
                    IWElement s = finite_reflection(i);
                    FiniteWeyl next;
                    next.fwd = cur.fwd * s.w.fwd;
                    next.inv = s.w.inv * cur.inv;
                    cur = next;
                    word.push_back(i);
                    found = true;
                    break;
                }
            }
            if (!found) throw std::logic_error("finite_word: stuck");
        }
        std::reverse(word.begin(), word.end());
        return word;
    }

    std::string element_string(const IWElement& w) const {
        std::string s;
        bool trivial_t = is_zero(w.t);
        if (!trivial_t) {
            s += "t[";
            for (std::size_t i = 0; i < w.t.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(w.t[i]);
            }
            s += "]";
        }
        std::vector<int> word = finite_word(w.w);
        for (int i : word) {
            if (!s.empty()) s += "*";
            s += "s" + std::to_string(i + 1);
        }
        if (s.empty()) s = "e";
        return s;
    }

    void require_semisimple() const {
        if (rd_.semisimple_rank() == 0)
            throw std::domain_error("operation needs a nonzero semisimple part");
    }

private:
    void init_simple_reflections() {
        // x0 = sum_c rho_c^vee / (2 h_c), solving <a_i, rho_c^vee> = 1 on
        // the simple roots of component c.
        x0_.assign(rd_.rank, Rational(0));
        int m = rd_.semisimple_rank();
        for (int c = 0; c < rd_.component_count; ++c) {
            std::vector<int> nodes;
            for (int i = 0; i < m; ++i)
                if (rd_.simple_component[i] == c) nodes.push_back(i);
            int k = static_cast<int>(nodes.size());
            IntMat cart(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) cart(i, j) = rd_.cartan(nodes[i], nodes[j]);
            // rho^vee = sum_j x_j a_j^vee with Cartan . x = (1,...,1)
            IntVec ones(k, 1);
            auto sol = solve_exact(cart, ones);
            if (!sol) throw std::logic_error("singular component Cartan matrix");
            std::int64_t h = rd_.positive_roots[rd_.highest_root_index[c]].height + 1;
            for (int j = 0; j < k; ++j) {
                Rational coef = (*sol)[j] / Rational(2 * h);
                for (int r = 0; r < rd_.rank; ++r)
                    x0_[r] += coef * Rational(rd_.simple_coroots[nodes[j]][r]);
            }
        }
        root_value_at_x0_.resize(rd_.positive_roots.size());
        for (std::size_t i = 0; i < rd_.positive_roots.size(); ++i) {
            root_value_at_x0_[i] = pair_with(rd_.positive_roots[i].root, x0_);
            if (!(root_value_at_x0_[i] > Rational(0)) || !(root_value_at_x0_[i] < Rational(1)))
                throw std::logic_error("base alcove point not interior");
        }

        int multi = rd_.component_count > 1;
        for (int c = 0; c < rd_.component_count; ++c) {
            for (int i = 0; i < m; ++i) {
                if (rd_.simple_component[i] != c) continue;
                simple_refs_.push_back(finite_reflection(i));
                simple_affine_roots_.push_back({rd_.root_lookup(rd_.simple_roots[i]), 0});
                simple_names_.push_back("s" + std::to_string(i + 1));
                finite_indices_.push_back(static_cast<int>(simple_refs_.size()) - 1);
            }
            int theta = rd_.highest_root_index[c];
            AffineRoot wall{-(theta + 1), 1};
            simple_refs_.push_back(reflection(wall));
            simple_affine_roots_.push_back(wall);
            simple_names_.push_back(multi ? "s0." + std::to_string(c) : "s0");
        }
    }

    bool bruhat_leq_graded(
        const IWElement& v, const IWElement& w, std::int64_t lv, std::int64_t lw,
        std::unordered_map<std::pair<IWElement, IWElement>, bool, IWPairHash>* memo) const {
        if (lv > lw) return false;
        if (v == w) return true;
        if (lw == 0) return false;
        std::pair<IWElement, IWElement> key;
        if (memo) {
            key = {v, w};
            auto it = memo->find(key);
            if (it != memo->end()) return it->second;
        }
        // smallest-index left descent of w
        int desc = -1;
        IWElement sw;
        for (int i = 0; i < simple_count(); ++i) {
            sw = multiply(simple_refs_[i], w);
            if (length(sw) == lw - 1) { desc = i; break; }
        }
        if (desc < 0) throw std::logic_error("bruhat: element of positive length has no descent");
        IWElement sv = multiply(simple_refs_[desc], v);
        std::int64_t lsv = length(sv);
        bool result;
        if (lsv < lv)
            result = bruhat_leq_graded(sv, sw, lsv, lw - 1, memo);
        else
            result = bruhat_leq_graded(v, sw, lv, lw - 1, memo);
        if (memo) memo->emplace(key, result);
        return result;
    }

    /// Cached BFS levels of W_aff (elements grouped by word length).
    const std::vector<std::vector<IWElement>>& affine_levels(std::int64_t max_len) const {
        if (static_cast<std::int64_t>(levels_.size()) > max_len) return levels_;
        require_semisimple();
        if (levels_.empty()) {
            levels_.push_back({identity()});
            level_index_.emplace(identity(), 0);
        }
        while (static_cast<std::int64_t>(levels_.size()) <= max_len) {
            std::vector<IWElement> next;
            for (const IWElement& w : levels_.back())
                for (const IWElement& s : simple_refs_) {
                    IWElement x = multiply(w, s);
                    if (!level_index_.count(x)) {
                        level_index_.emplace(x, static_cast<std::int64_t>(levels_.size()));
                        next.push_back(x);
                    }
                }
            std::sort(next.begin(), next.end());
            levels_.push_back(std::move(next));
        }
        return levels_;
    }

    RootDatum rd_;
    RationalPoint x0_;
    std::vector<Rational> root_value_at_x0_;
    std::vector<IWElement> simple_refs_;
    std::vector<AffineRoot> simple_affine_roots_;
    std::vector<std::string> simple_names_;
    std::vector<int> finite_indices_;

    mutable std::vector<std::vector<IWElement>> levels_;
    mutable std::unordered_map<IWElement, std::int64_t, IWElementHash> level_index_;
};

}  // namespace aflag
