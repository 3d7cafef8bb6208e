#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aflag/weyl.hpp"

namespace aflag {

/// Facet in the closure of the base alcove, represented by its type: the set
/// J of simple affine reflections whose walls contain it. W_J must be finite,
/// i.e. J omits at least one node of each affine component.
struct Facet {
    std::vector<int> type;  // sorted indices into S
    std::string name;       // "a0", "0", or "J=..."

    friend bool operator==(const Facet& a, const Facet& b) { return a.type == b.type; }
};

/// Double coset W_{f'} w W_f, stored through its unique minimal-length
/// element.
struct DoubleCoset {
    Facet left;
    Facet right;
    IWElement min_rep;
};

struct CellRow {
    IWElement min_rep;  // minimal element of the cell's coset in W/W_f
    std::int64_t dim;
    std::optional<Cocharacter> label;  // cocharacter label when f is the base point
};

/// Cells of a Schubert closure: one row per Iwahori orbit, the closure
/// partial order, and its Hasse covers.
struct CellTable {
    DoubleCoset bound;
    std::vector<CellRow> rows;                    // sorted by (dim, min_rep)
    std::vector<std::vector<bool>> leq;           // closure order on rows
    std::vector<std::pair<int, int>> covers;      // Hasse diagram edges (lower, upper)
};

class FlagCells {
public:
    explicit FlagCells(const AffineWeylGroup& w, std::int64_t subgroup_cap = 200000)
        : w_(w), subgroup_cap_(subgroup_cap) {}

    const AffineWeylGroup& group() const { return w_; }

    // ---- facets -------------------------------------------------------------

    Facet alcove_facet() const { return Facet{{}, "a0"}; }

    Facet base_point_facet() const {
        Facet f;
        f.type = w_.finite_simple_indices();
        std::sort(f.type.begin(), f.type.end());
        f.name = "0";
        return f;
    }

    Facet facet_from_type(std::vector<int> type) const {
        std::sort(type.begin(), type.end());
        type.erase(std::unique(type.begin(), type.end()), type.end());
        for (int i : type)
            if (i < 0 || i >= w_.simple_count())
                throw std::invalid_argument("facet type index out of range");
        Facet f{type, ""};
        if (!facet_valid(f)) throw std::invalid_argument("facet type generates an infinite group");
        if (f.type.empty()) {
            f.name = "a0";
        } else if (f.type == base_point_facet().type) {
            f.name = "0";
        } else {
            f.name = "J=";
            for (std::size_t i = 0; i < f.type.size(); ++i) {
                if (i) f.name += ",";
                f.name += std::to_string(f.type[i]);
            }
        }
        return f;
    }

    /// W_J is finite exactly when J misses a node of every affine component.
    bool facet_valid(const Facet& f) const {
        const auto& rd = w_.datum();
        std::vector<int> per_component(rd.component_count, 0);
        std::vector<int> sizes(rd.component_count, 0);
        for (int i = 0; i < rd.semisimple_rank(); ++i) ++sizes[rd.simple_component[i]];
        for (auto& s : sizes) ++s;  // one affine node each
        std::vector<int> comp_of_s(w_.simple_count());
        {
            int idx = 0;
            for (int c = 0; c < rd.component_count; ++c) {
                for (int i = 0; i < rd.semisimple_rank(); ++i)
                    if (rd.simple_component[i] == c) comp_of_s[idx++] = c;
                comp_of_s[idx++] = c;
            }
        }
        for (int j : f.type) ++per_component[comp_of_s[j]];
        for (int c = 0; c < rd.component_count; ++c)
            if (per_component[c] >= sizes[c]) return false;
        return true;
    }

    /// Exact barycenter: average of the alcove vertices not lying on the
    /// facet's walls. Vanishes on alpha_s for s in J, positive elsewhere on S.
    RationalPoint barycenter(const Facet& f) const {
        const auto& rd = w_.datum();
        w_.require_semisimple();
        RationalPoint x(rd.rank, Rational(0));
        // per component: vertices are 0 (index of affine node) and
        // omega_i^vee / m_i for each finite node i with theta = sum m_i a_i
        int s_idx = 0;
        for (int c = 0; c < rd.component_count; ++c) {
            std::vector<int> nodes;
            for (int i = 0; i < rd.semisimple_rank(); ++i)
                if (rd.simple_component[i] == c) nodes.push_back(i);
            int k = static_cast<int>(nodes.size());
            const Root& theta = rd.positive_roots[rd.highest_root_index[c]];
            // fundamental coweights inside the component's coroot span
            IntMat cart(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) cart(i, j) = rd.cartan(nodes[i], nodes[j]);
            std::vector<RationalPoint> vertices;  // aligned with S order: finite nodes then affine
            for (int i = 0; i < k; ++i) {
                IntVec e(k, 0);
                e[i] = 1;
                auto sol = solve_exact(cart, e);  // omega_i^vee over the simple coroots
                RationalPoint v(rd.rank, Rational(0));
                std::int64_t mi = theta.coeffs[nodes[i]];
                for (int j = 0; j < k; ++j) {
                    Rational coef = (*sol)[j] / Rational(mi);
                    for (int r = 0; r < rd.rank; ++r)
                        v[r] += coef * Rational(rd.simple_coroots[nodes[j]][r]);
                }
                vertices.push_back(std::move(v));
            }
            vertices.emplace_back(rd.rank, Rational(0));  // the origin, opposite the affine wall

            std::vector<int> off;  // local S indices (s_idx .. s_idx+k) not in J
            for (int local = 0; local <= k; ++local) {
                int global = s_idx + local;
                if (std::find(f.type.begin(), f.type.end(), global) == f.type.end())
                    off.push_back(local);
            }
            Rational inv(1, static_cast<std::int64_t>(off.size()));
            for (int local : off)
                for (int r = 0; r < rd.rank; ++r) x[r] += inv * vertices[local][r];
            s_idx += k + 1;
        }
        return x;
    }

    /// Elements of the finite subgroup W_J.
    std::vector<IWElement> facet_subgroup(const Facet& f) const {
        auto it = subgroup_cache_.find(f.type);
        if (it != subgroup_cache_.end()) return it->second;
        std::vector<IWElement> out{w_.identity()};
        std::set<IWElement> seen{w_.identity()};
        std::size_t head = 0;
        while (head < out.size()) {
            IWElement cur = out[head++];
            for (int j : f.type) {
                IWElement nxt = w_.multiply(cur, w_.simple_reflections()[j]);
                if (seen.insert(nxt).second) {
                    out.push_back(nxt);
                    if (static_cast<std::int64_t>(out.size()) > subgroup_cap_)
                        throw LimitError("facet subgroup exceeds enumeration cap");
                }
            }
        }
        std::sort(out.begin(), out.end());
        subgroup_cache_.emplace(f.type, out);
        return out;
    }

    // ---- double cosets --------------------------------------------------------

    /// Unique minimal-length element of W_{f'} w W_f, found by greedy descent
    /// on both sides.
    DoubleCoset double_coset_of(IWElement w, const Facet& left, const Facet& right) const {
        std::int64_t l = w_.length(w);
        bool moved = true;
        while (moved) {
            moved = false;
            for (int j : left.type) {
                IWElement cand = w_.multiply(w_.simple_reflections()[j], w);
                std::int64_t lc = w_.length(cand);
                if (lc < l) { w = std::move(cand); l = lc; moved = true; break; }
            }
            if (moved) continue;
            for (int j : right.type) {
                IWElement cand = w_.multiply(w, w_.simple_reflections()[j]);
                std::int64_t lc = w_.length(cand);
                if (lc < l) { w = std::move(cand); l = lc; moved = true; break; }
            }
        }
        return DoubleCoset{left, right, std::move(w)};
    }

    /// Unique maximal-length element of the (finite) double coset.
    IWElement double_coset_max(const DoubleCoset& c) const {
        IWElement w = c.min_rep;
        std::int64_t l = w_.length(w);
        bool moved = true;
        while (moved) {
            moved = false;
            for (int j : c.left.type) {
                IWElement cand = w_.multiply(w_.simple_reflections()[j], w);
                std::int64_t lc = w_.length(cand);
                if (lc > l) { w = std::move(cand); l = lc; moved = true; break; }
            }
            if (moved) continue;
            for (int j : c.right.type) {
                IWElement cand = w_.multiply(w, w_.simple_reflections()[j]);
                std::int64_t lc = w_.length(cand);
                if (lc > l) { w = std::move(cand); l = lc; moved = true; break; }
            }
        }
        return w;
    }

    /// All elements of W_{f'} w W_f (both subgroups are finite).
    std::vector<IWElement> double_coset_elements(const DoubleCoset& c) const {
        auto lefts = facet_subgroup(c.left);
        auto rights = facet_subgroup(c.right);
        std::set<IWElement> seen;
        for (const auto& u : lefts) {
            IWElement uw = w_.multiply(u, c.min_rep);
            for (const auto& v : rights) seen.insert(w_.multiply(uw, v));
        }
        return {seen.begin(), seen.end()};
    }

    /// Minimal element of the one-sided coset w W_f.
    IWElement coset_min(IWElement w, const Facet& f) const {
        std::int64_t l = w_.length(w);
        bool moved = true;
        while (moved) {
            moved = false;
            for (int j : f.type) {
                IWElement cand = w_.multiply(w, w_.simple_reflections()[j]);
                std::int64_t lc = w_.length(cand);
                if (lc < l) { w = std::move(cand); l = lc; moved = true; break; }
            }
        }
        return w;
    }

    IWElement coset_max(IWElement w, const Facet& f) const {
        std::int64_t l = w_.length(w);
        bool moved = true;
        while (moved) {
            moved = false;
            for (int j : f.type) {
                IWElement cand = w_.multiply(w, w_.simple_reflections()[j]);
                std::int64_t lc = w_.length(cand);
                if (lc > l) { w = std::move(cand); l = lc; moved = true; break; }
            }
        }
        return w;
    }

    /// Dimension of the Iwahori orbit indexed by the coset w W_f: the length
    /// of the coset's minimal element.
    std::int64_t iwahori_cell_dimension(const IWElement& w, const Facet& f) const {
        return w_.length(coset_min(w, f));
    }

    /// The length function on W_{f'} \ W / W_f, normalized as the dimension
    /// of the associated cell: the maximum Iwahori-orbit dimension over the
    /// class. For f' the alcove this is the length of min_rep; for the base
    /// point on both sides it evaluates to <2rho, mu> on the dominant label.
    std::int64_t coset_length(const DoubleCoset& c) const {
        if (c.left.type.empty()) return w_.length(c.min_rep);
        std::int64_t best = 0;
        for (const auto& x : double_coset_elements(c))
            best = std::max(best, iwahori_cell_dimension(x, c.right));
        return best;
    }

    std::int64_t cell_dimension(const DoubleCoset& c) const { return coset_length(c); }

    /// Induced Bruhat order on double cosets via their minimal elements.
    bool coset_bruhat_leq(const DoubleCoset& a, const DoubleCoset& b) const {
        if (!(a.left == b.left) || !(a.right == b.right))
            throw std::invalid_argument("coset_bruhat_leq: facet pair mismatch");
        return w_.bruhat_leq(a.min_rep, b.min_rep);
    }

    /// Oracle for the induced order: some element of a lies below some
    /// element of b. Used to validate the minimal-representative order.
    bool coset_leq_by_pairs(const DoubleCoset& a, const DoubleCoset& b) const {
        auto ea = double_coset_elements(a);
        auto eb = double_coset_elements(b);
        for (const auto& x : ea)
            for (const auto& y : eb)
                if (w_.bruhat_leq(x, y)) return true;
        return false;
    }

    // ---- dimension by affine root counting ------------------------------------

    /// Number of affine roots alpha with w.alpha positive on the base alcove
    /// and alpha negative on the facet. Equals the length of w whenever w is
    /// a minimal coset representative in W/W_f; the level window per finite
    /// root is finite and is asserted against the stated search bound.
    std::int64_t cell_dimension_by_roots(const IWElement& w, const Facet& f) const {
        const auto& rd = w_.datum();
        RationalPoint xf = barycenter(f);
        std::int64_t maxh = 0;
        for (int c = 0; c < rd.component_count; ++c)
            maxh = std::max(maxh, rd.positive_roots[rd.highest_root_index[c]].height);
        std::int64_t bound = w_.length(w) * (maxh + 1) + 2;
        std::int64_t count = 0;
        const int npos = static_cast<int>(rd.positive_roots.size());
        for (int sgn = 0; sgn < 2; ++sgn)
            for (int i = 0; i < npos; ++i) {
                int finite = sgn == 0 ? (i + 1) : -(i + 1);
                IntVec a = w_.affine_root_functional({finite, 0});
                Rational av = pair_with(a, xf);
                // alpha = a + k negative at the facet barycenter: k < -av
                std::int64_t khi;
                if (av.is_integer())
                    khi = -av.num() - 1;
                else {
                    // floor(-av)
                    std::int64_t n = -av.num(), d = av.den();
                    khi = n >= 0 ? n / d : -((-n + d - 1) / d);
                }
                // (w.alpha) positive on the base alcove: level k - <b,t> >= kmin(b)
                IntVec b = w.w.inv.apply_transposed(a);
                int bidx = rd.root_lookup(b);
                if (bidx == 0) throw std::logic_error("cell_dimension_by_roots: image not a root");
                std::int64_t klo = dot(b, w.t) + (bidx > 0 ? 0 : 1);
                if (khi >= klo) {
                    count += khi - klo + 1;
                    if (std::max(std::abs(khi), std::abs(klo)) > bound)
                        throw std::logic_error("affine root level bound violated");
                }
            }
        return count;
    }

    // ---- Schubert cell tables ---------------------------------------------------

    /// Cocharacter label of a coset w W_0 over the base point facet: the
    /// negative of the coset's translation vector. With this labeling the
    /// cell of label mu has dimension <2rho, mu_dom> - #{a > 0 : <a,mu> < 0},
    /// and the dominant label of a spherical class pairs with 2rho to its
    /// cell dimension.
    Cocharacter cell_label(const IWElement& coset_rep) const {
        return scale(-1, coset_rep.t);
    }

    /// The W/W_f coset (as a DoubleCoset with Iwahori left facet) carrying a
    /// cocharacter label, and the spherical class of a dominant label.
    IWElement element_for_label(const Cocharacter& mu) const {
        return w_.translation(scale(-1, mu));
    }

    DoubleCoset bound_for_label(const Cocharacter& mu, const Facet& left, const Facet& right) const {
        return double_coset_of(element_for_label(mu), left, right);
    }

    /// Rows of the Schubert closure of the bound: every Iwahori orbit in every
    /// class below it, with dimensions and closure order. Row dimensions may
    /// be computed in parallel (thread count via threads argument), the output
    /// is canonical regardless.
    CellTable schubert_cells(const DoubleCoset& bound, int threads = 1,
                             std::int64_t enum_cap = 24) const {
        CellTable table;
        table.bound = bound;
        const Facet& fr = bound.right;
        std::int64_t dim = coset_length(bound);
        if (dim > enum_cap) throw LimitError("schubert_cells: bound dimension exceeds cap");
        std::vector<IWElement> omega{w_.omega_part(bound.min_rep)};
        std::vector<IWElement> all = w_.enumerate_by_length(dim, omega, enum_cap);

        // candidate rows: coset-minimal elements whose class lies below the bound
        std::vector<IWElement> mins;
        for (const IWElement& x : all) {
            if (!(coset_min(x, fr) == x)) continue;
            DoubleCoset cls = double_coset_of(x, bound.left, fr);
            if (w_.bruhat_leq(cls.min_rep, bound.min_rep)) mins.push_back(x);
        }

        bool base_point = fr.type == base_point_facet().type;
        table.rows.resize(mins.size());
        auto fill = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                CellRow row;
                row.min_rep = mins[i];
                row.dim = w_.length(mins[i]);
                if (base_point) row.label = cell_label(mins[i]);
                table.rows[i] = std::move(row);
            }
        };
        run_partitioned(mins.size(), threads, fill);
        std::sort(table.rows.begin(), table.rows.end(), [](const CellRow& a, const CellRow& b) {
            return std::tie(a.dim, a.min_rep) < std::tie(b.dim, b.min_rep);
        });

        const std::size_t n = table.rows.size();
        table.leq.assign(n, std::vector<bool>(n, false));
        auto fill_leq = [&](std::size_t lo, std::size_t hi) {
            std::unordered_map<std::pair<IWElement, IWElement>, bool, IWPairHash> memo;
            for (std::size_t i = lo; i < hi; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    table.leq[i][j] =
                        w_.bruhat_leq_cached(table.rows[i].min_rep, table.rows[j].min_rep, memo);
        };
        run_partitioned(n, threads, fill_leq);

        // Hasse covers by transitive reduction
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j || !table.leq[i][j]) continue;
                bool direct = true;
                for (std::size_t k = 0; k < n && direct; ++k)
                    if (k != i && k != j && table.leq[i][k] && table.leq[k][j]) direct = false;
                if (direct) table.covers.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        std::sort(table.covers.begin(), table.covers.end());

        std::int64_t top = 0;
        for (const auto& r : table.rows) top = std::max(top, r.dim);
        if (top != dim) throw std::logic_error("schubert_cells: top dimension mismatch");
        return table;
    }

    /// Fibers of the projection Fl_{f'} -> Fl_f over the cell of w W_f, for
    /// J' contained in J: one fiber per W_{f'}-coset in w W_f, of relative
    /// dimension l(v_min) - l(w_min). Exactly one fiber has dimension zero.
    std::vector<std::pair<IWElement, std::int64_t>> projection_fiber_decomposition(
        const IWElement& w, const Facet& fine, const Facet& coarse) const {
        for (int j : fine.type)
            if (std::find(coarse.type.begin(), coarse.type.end(), j) == coarse.type.end())
                throw std::invalid_argument("projection: left facet type must be contained in right");
        IWElement wmin = coset_min(w, coarse);
        std::int64_t base = w_.length(wmin);
        std::map<IWElement, IWElement> fiber_min;  // coset-min over fine per element
        for (const IWElement& u : facet_subgroup(coarse)) {
            IWElement v = w_.multiply(wmin, u);
            IWElement vmin = coset_min(v, fine);
            fiber_min.emplace(vmin, vmin);
        }
        std::vector<std::pair<IWElement, std::int64_t>> out;
        for (const auto& [vmin, _] : fiber_min)
            out.emplace_back(vmin, w_.length(vmin) - base);
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            return std::tie(a.second, a.first) < std::tie(b.second, b.first);
        });
        return out;
    }

private:
    template <class F>
    static void run_partitioned(std::size_t n, int threads, F&& body) {
        if (threads <= 1 || n < 2) {
            body(0, n);
            return;
        }
        int k = std::min<int>(threads, static_cast<int>(n));
        std::vector<std::future<void>> futs;
        std::size_t chunk = (n + k - 1) / k;
        for (int t = 0; t < k; ++t) {
            std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            futs.push_back(std::async(std::launch::async, [lo, hi, &body] { body(lo, hi); }));
        }
        for (auto& f : futs) f.get();
    }

    const AffineWeylGroup& w_;
    std::int64_t subgroup_cap_;
    mutable std::map<std::vector<int>, std::vector<IWElement>> subgroup_cache_;
};

}  // namespace aflag
