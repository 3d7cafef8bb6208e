#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "aflag/linalg.hpp"
#include "aflag/rational.hpp"

namespace aflag {

enum class GroupType { A, B, C, D, E, F, G, GL };
enum class Isogeny { SimplyConnected, Adjoint, GeneralLinear };

inline char group_type_letter(GroupType t) {
    switch (t) {
        case GroupType::A: return 'A';
        case GroupType::B: return 'B';
        case GroupType::C: return 'C';
        case GroupType::D: return 'D';
        case GroupType::E: return 'E';
        case GroupType::F: return 'F';
        case GroupType::G: return 'G';
        case GroupType::GL: return 'L';
    }
    return '?';
}

inline std::string isogeny_name(Isogeny i) {
    switch (i) {
        case Isogeny::SimplyConnected: return "sc";
        case Isogeny::Adjoint: return "ad";
        case Isogeny::GeneralLinear: return "gl";
    }
    return "?";
}

/// Element of the cocharacter lattice, as integer coordinates in a fixed
/// basis of X_*(T) = Z^r.
using Cocharacter = IntVec;

/// One root together with its coroot and its expansion over the simple roots.
struct Root {
    IntVec root;     // coordinates as a functional on X_*(T)
    IntVec coroot;   // coordinates in X_*(T)
    IntVec coeffs;   // expansion of the root over the simple roots
    int component;   // index of the irreducible component it belongs to
    std::int64_t height;  // sum of the simple-root coefficients
};

/// Root datum of a split reductive group: lattices, roots, coroots, the
/// pairing, dominance order and the fundamental group pi1 = X_*(T)/Q^vee.
///
/// Coordinates: X_*(T) = Z^r with a fixed basis; characters are integer
/// functionals on it. Simply connected data take the simple coroots as the
/// basis, adjoint data take the basis dual to the simple roots, GL_n uses
/// the standard basis with roots e_i - e_j.
struct RootDatum {
    std::string label;
    GroupType type = GroupType::A;
    int type_rank = 1;   // the Dynkin rank (n in A_n, GL_n, ...)
    Isogeny isogeny = Isogeny::SimplyConnected;

    int rank = 0;  // rank of X_*(T)
    std::vector<IntVec> simple_roots;    // functionals on X_*
    std::vector<IntVec> simple_coroots;  // vectors in X_*
    std::vector<Root> positive_roots;
    IntVec two_rho;  // sum of the positive roots

    IntMat cartan;  // cartan(i,j) = <a_i, a_j^vee>
    std::vector<int> simple_component;      // component index per simple root
    int component_count = 0;
    std::vector<int> highest_root_index;    // per component, index into positive_roots
    int torus_rank = 0;  // rank - number of simple roots

    SmithForm coroot_smith;                 // of the matrix with simple coroots as columns
    std::vector<std::int64_t> pi1_factors;  // nontrivial invariant factors then 0 per free rank

    int semisimple_rank() const { return static_cast<int>(simple_roots.size()); }

    std::int64_t pair(const IntVec& character, const Cocharacter& mu) const {
        return dot(character, mu);
    }

    /// Signed lookup: returns +(i+1) if v is positive root i, -(i+1) if it is
    /// the negative of positive root i, 0 if v is not a root.
    int root_lookup(const IntVec& v) const {
        auto it = root_index_.find(v);
        return it == root_index_.end() ? 0 : it->second;
    }

    const Root& positive_root(int idx) const { return positive_roots[static_cast<std::size_t>(idx)]; }

    // filled by build_root_datum
    std::map<IntVec, int> root_index_;
};

namespace detail {

inline IntMat cartan_matrix(GroupType t, int n) {
    auto chain = [&](IntMat& c) {
        for (int i = 0; i + 1 < n; ++i) { c(i, i + 1) = -1; c(i + 1, i) = -1; }
    };
    IntMat c(n, n);
    for (int i = 0; i < n; ++i) c(i, i) = 2;
    switch (t) {
        case GroupType::A:
            if (n < 1) throw std::invalid_argument("type A needs rank >= 1");
            chain(c);
            break;
        case GroupType::B:
            if (n < 2) throw std::invalid_argument("type B needs rank >= 2");
            chain(c);
            c(n - 2, n - 1) = -2;  // <a_{n-1}, a_n^vee> for the short last root
            c(n - 1, n - 2) = -1;
            break;
        case GroupType::C:
            if (n < 2) throw std::invalid_argument("type C needs rank >= 2");
            chain(c);
            c(n - 2, n - 1) = -1;
            c(n - 1, n - 2) = -2;
            break;
        case GroupType::D:
            if (n < 3) throw std::invalid_argument("type D needs rank >= 3");
            for (int i = 0; i + 2 < n; ++i) { c(i, i + 1) = -1; c(i + 1, i) = -1; }
            c(n - 3, n - 1) = -1;
            c(n - 1, n - 3) = -1;
            break;
        case GroupType::E: {
            if (n < 6 || n > 8) throw std::invalid_argument("type E needs rank 6, 7 or 8");
            // Bourbaki numbering: chain 1-3-4-5-...-n, node 2 attached to 4.
            auto link = [&](int i, int j) { c(i - 1, j - 1) = -1; c(j - 1, i - 1) = -1; };
            link(1, 3);
            link(3, 4);
            link(2, 4);
            for (int k = 4; k < n; ++k) link(k, k + 1);
            break;
        }
        case GroupType::F:
            if (n != 4) throw std::invalid_argument("type F needs rank 4");
            c(0, 1) = c(1, 0) = -1;
            c(1, 2) = -2;  // long-to-short edge
            c(2, 1) = -1;
            c(2, 3) = c(3, 2) = -1;
            break;
        case GroupType::G:
            if (n != 2) throw std::invalid_argument("type G needs rank 2");
            c(0, 1) = -1;
            c(1, 0) = -3;
            break;
        case GroupType::GL:
            throw std::logic_error("cartan_matrix: GL handled separately");
    }
    return c;
}

inline void generate_roots(RootDatum& rd) {
    const int m = rd.semisimple_rank();
    // seed with simple roots; close under simple reflections on both lattices
    std::map<IntVec, Root> seen;
    std::vector<IntVec> work;
    for (int i = 0; i < m; ++i) {
        Root r;
        r.root = rd.simple_roots[i];
        r.coroot = rd.simple_coroots[i];
        r.coeffs = IntVec(m, 0);
        r.coeffs[i] = 1;
        r.component = -1;
        r.height = 1;
        seen.emplace(r.root, r);
        work.push_back(r.root);
    }
    while (!work.empty()) {
        IntVec v = work.back();
        work.pop_back();
        Root cur = seen.at(v);
        for (int j = 0; j < m; ++j) {
            std::int64_t p = dot(cur.root, rd.simple_coroots[j]);      // <a, a_j^vee>
            std::int64_t q = dot(rd.simple_roots[j], cur.coroot);      // <a_j, a^vee>
            Root img;
            img.root = sub(cur.root, scale(p, rd.simple_roots[j]));
            img.coroot = sub(cur.coroot, scale(q, rd.simple_coroots[j]));
            img.coeffs = cur.coeffs;
            img.coeffs[j] -= p;
            img.height = cur.height - p;
            img.component = -1;
            if (!seen.count(img.root)) {
                seen.emplace(img.root, img);
                work.push_back(img.root);
            }
        }
    }
    // keep the positives (all expansion coefficients >= 0)
    for (auto& [vec, r] : seen) {
        bool pos = true, neg = true;
        for (auto c : r.coeffs) {
            if (c < 0) pos = false;
            if (c > 0) neg = false;
        }
        if (!pos && !neg) throw std::logic_error("root with mixed signs generated");
        if (pos) rd.positive_roots.push_back(r);
    }
    std::sort(rd.positive_roots.begin(), rd.positive_roots.end(),
              [](const Root& x, const Root& y) {
                  return std::tie(x.height, x.coeffs) < std::tie(y.height, y.coeffs);
              });

    // connected components of the Dynkin diagram
    rd.simple_component.assign(m, -1);
    int comp = 0;
    for (int i = 0; i < m; ++i) {
        if (rd.simple_component[i] >= 0) continue;
        std::vector<int> stack{i};
        rd.simple_component[i] = comp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < m; ++v)
                if (rd.simple_component[v] < 0 && rd.cartan(u, v) != 0) {
                    rd.simple_component[v] = comp;
                    stack.push_back(v);
                }
        }
        ++comp;
    }
    rd.component_count = comp;

    for (auto& r : rd.positive_roots) {
        for (int i = 0; i < m; ++i)
            if (r.coeffs[i] != 0) { r.component = rd.simple_component[i]; break; }
    }

    // highest root per component: unique height maximum
    rd.highest_root_index.assign(comp, -1);
    for (int idx = 0; idx < static_cast<int>(rd.positive_roots.size()); ++idx) {
        const Root& r = rd.positive_roots[idx];
        int c = r.component;
        if (rd.highest_root_index[c] < 0 ||
            rd.positive_roots[rd.highest_root_index[c]].height < r.height)
            rd.highest_root_index[c] = idx;
    }
    for (int c = 0; c < comp; ++c) {
        std::int64_t h = rd.positive_roots[rd.highest_root_index[c]].height;
        int count = 0;
        for (const Root& r : rd.positive_roots)
            if (r.component == c && r.height == h) ++count;
        if (count != 1) throw std::logic_error("highest root not unique");
    }

    rd.two_rho.assign(rd.rank, 0);
    for (const Root& r : rd.positive_roots) rd.two_rho = add(rd.two_rho, r.root);

    for (int idx = 0; idx < static_cast<int>(rd.positive_roots.size()); ++idx) {
        rd.root_index_[rd.positive_roots[idx].root] = idx + 1;
        IntVec negv = scale(-1, rd.positive_roots[idx].root);
        rd.root_index_[negv] = -(idx + 1);
    }
}

inline void finish_datum(RootDatum& rd) {
    generate_roots(rd);
    rd.torus_rank = rd.rank - rd.semisimple_rank();

    IntMat a(rd.rank, rd.semisimple_rank());
    for (int j = 0; j < rd.semisimple_rank(); ++j)
        for (int i = 0; i < rd.rank; ++i) a(i, j) = rd.simple_coroots[j][i];
    rd.coroot_smith = smith_normal_form(a);
    for (auto d : rd.coroot_smith.invariant_factors)
        if (d > 1) rd.pi1_factors.push_back(d);
    for (int i = 0; i < rd.rank - static_cast<int>(rd.coroot_smith.invariant_factors.size()); ++i)
        rd.pi1_factors.push_back(0);
}

}  // namespace detail

inline RootDatum build_root_datum(GroupType type, int rank, Isogeny isogeny) {
    if ((type == GroupType::GL) != (isogeny == Isogeny::GeneralLinear))
        throw std::invalid_argument("isogeny 'gl' is for type GL exactly");
    RootDatum rd;
    rd.type = type;
    rd.type_rank = rank;
    rd.isogeny = isogeny;

    if (type == GroupType::GL) {
        if (rank < 1) throw std::invalid_argument("GL needs rank >= 1");
        rd.rank = rank;
        for (int i = 0; i + 1 < rank; ++i) {
            IntVec v(rank, 0);
            v[i] = 1;
            v[i + 1] = -1;
            rd.simple_roots.push_back(v);
            rd.simple_coroots.push_back(v);
        }
        rd.cartan = IntMat(rank - 1, rank - 1);
        for (int i = 0; i + 1 < rank; ++i)
            for (int j = 0; j + 1 < rank; ++j)
                rd.cartan(i, j) = dot(rd.simple_roots[i], rd.simple_coroots[j]);
        rd.label = "GL" + std::to_string(rank);
    } else {
        IntMat c = detail::cartan_matrix(type, rank);
        rd.cartan = c;
        rd.rank = rank;
        if (isogeny == Isogeny::SimplyConnected) {
            // basis of X_* = simple coroots; roots are the Cartan rows
            for (int i = 0; i < rank; ++i) {
                IntVec root(rank), coroot(rank, 0);
                for (int j = 0; j < rank; ++j) root[j] = c(i, j);
                coroot[i] = 1;
                rd.simple_roots.push_back(root);
                rd.simple_coroots.push_back(coroot);
            }
        } else {
            // basis of X^* = simple roots; coroots are the Cartan columns
            for (int i = 0; i < rank; ++i) {
                IntVec root(rank, 0), coroot(rank);
                root[i] = 1;
                for (int j = 0; j < rank; ++j) coroot[j] = c(j, i);
                rd.simple_roots.push_back(root);
                rd.simple_coroots.push_back(coroot);
            }
        }
        rd.label = std::string(1, group_type_letter(type)) + std::to_string(rank) +
                   isogeny_name(isogeny);
    }
    detail::finish_datum(rd);
    return rd;
}

/// Direct sum of two root data (product group), concatenating lattices.
inline RootDatum direct_sum(const RootDatum& a, const RootDatum& b) {
    RootDatum rd;
    rd.type = a.type;
    rd.type_rank = a.type_rank;
    rd.isogeny = a.isogeny;
    rd.rank = a.rank + b.rank;
    rd.label = a.label + "x" + b.label;
    auto embed = [&](const IntVec& v, int offset) {
        IntVec out(rd.rank, 0);
        for (std::size_t i = 0; i < v.size(); ++i) out[offset + static_cast<int>(i)] = v[i];
        return out;
    };
    for (const auto& v : a.simple_roots) rd.simple_roots.push_back(embed(v, 0));
    for (const auto& v : b.simple_roots) rd.simple_roots.push_back(embed(v, a.rank));
    for (const auto& v : a.simple_coroots) rd.simple_coroots.push_back(embed(v, 0));
    for (const auto& v : b.simple_coroots) rd.simple_coroots.push_back(embed(v, a.rank));
    int m = rd.semisimple_rank();
    rd.cartan = IntMat(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) rd.cartan(i, j) = dot(rd.simple_roots[i], rd.simple_coroots[j]);
    detail::finish_datum(rd);
    return rd;
}

inline bool is_dominant(const RootDatum& rd, const Cocharacter& mu) {
    for (const Root& r : rd.positive_roots)
        if (rd.pair(r.root, mu) < 0) return false;
    return true;
}

/// Dominance order: lambda <= mu iff mu - lambda is a nonnegative integer
/// combination of the simple coroots (equivalently of positive coroots).
inline bool dominance_leq(const RootDatum& rd, const Cocharacter& lambda, const Cocharacter& mu) {
    if (!is_dominant(rd, lambda) || !is_dominant(rd, mu))
        throw std::invalid_argument("dominance_leq: inputs must be dominant");
    IntVec diff = sub(mu, lambda);
    const SmithForm& s = rd.coroot_smith;
    IntVec y = s.u.apply(diff);
    int m = rd.semisimple_rank();
    IntVec z(m, 0);
    for (int i = 0; i < rd.rank; ++i) {
        if (i < m) {
            std::int64_t d = s.d(i, i);
            if (y[i] % d != 0) return false;
            z[i] = y[i] / d;
        } else if (y[i] != 0) {
            return false;
        }
    }
    IntVec c = s.v.apply(z);
    for (auto x : c)
        if (x < 0) return false;
    return true;
}

/// Word entries are simple-reflection indices; applying them to mu in list
/// order yields the dominant representative.
struct DominantRep {
    Cocharacter dominant;
    std::vector<int> word;
};

inline Cocharacter apply_simple_coreflection(const RootDatum& rd, int i, const Cocharacter& mu) {
    std::int64_t p = rd.pair(rd.simple_roots[i], mu);
    return sub(mu, scale(p, rd.simple_coroots[i]));
}

inline DominantRep dominant_representative(const RootDatum& rd, Cocharacter mu) {
    DominantRep out;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i = 0; i < rd.semisimple_rank(); ++i) {
            if (rd.pair(rd.simple_roots[i], mu) < 0) {
                mu = apply_simple_coreflection(rd, i, mu);
                out.word.push_back(i);
                moved = true;
                break;
            }
        }
    }
    out.dominant = std::move(mu);
    return out;
}

/// Class of mu in pi1 = X_*(T)/Q^vee, in Smith-normal-form coordinates:
/// one entry per nontrivial invariant factor (reduced mod it), then the
/// free coordinates.
inline IntVec pi1_class(const RootDatum& rd, const Cocharacter& mu) {
    const SmithForm& s = rd.coroot_smith;
    IntVec y = s.u.apply(mu);
    IntVec out;
    int m = rd.semisimple_rank();
    for (int i = 0; i < m; ++i) {
        std::int64_t d = s.d(i, i);
        if (d > 1) {
            std::int64_t v = y[i] % d;
            if (v < 0) v += d;
            out.push_back(v);
        }
    }
    for (int i = m; i < rd.rank; ++i) out.push_back(y[i]);
    return out;
}

inline IntVec pi1_zero(const RootDatum& rd) {
    return IntVec(rd.pi1_factors.size(), 0);
}

inline IntVec pi1_add(const RootDatum& rd, const IntVec& a, const IntVec& b) {
    IntVec out(a.size());
    std::size_t tors = 0;
    for (auto d : rd.pi1_factors)
        if (d > 1) ++tors;
    (void)tors;
    std::size_t i = 0;
    for (; i < rd.pi1_factors.size(); ++i) {
        std::int64_t d = rd.pi1_factors[i];
        out[i] = a[i] + b[i];
        if (d > 1) out[i] = ((out[i] % d) + d) % d;
    }
    return out;
}

/// A cocharacter mapping to the given pi1 class (inverse of pi1_class up to
/// the coroot lattice).
inline Cocharacter pi1_lift(const RootDatum& rd, const IntVec& cls) {
    if (cls.size() != rd.pi1_factors.size()) throw std::invalid_argument("pi1_lift: class size");
    IntVec y(rd.rank, 0);
    int m = rd.semisimple_rank();
    std::size_t k = 0;
    for (int i = 0; i < m; ++i)
        if (rd.coroot_smith.d(i, i) > 1) y[i] = cls[k++];
    for (int i = m; i < rd.rank; ++i) y[i] = cls[k++];
    return rd.coroot_smith.u_inv.apply(y);
}

/// Full finite Weyl orbit of a cocharacter (closure under simple reflections).
inline std::set<Cocharacter> weyl_orbit(const RootDatum& rd, const Cocharacter& mu) {
    std::set<Cocharacter> orbit{mu};
    std::vector<Cocharacter> work{mu};
    while (!work.empty()) {
        Cocharacter v = work.back();
        work.pop_back();
        for (int i = 0; i < rd.semisimple_rank(); ++i) {
            Cocharacter img = apply_simple_coreflection(rd, i, v);
            if (orbit.insert(img).second) work.push_back(img);
        }
    }
    return orbit;
}

/// All dominant lambda <= mu in the dominance order (mu dominant).
inline std::vector<Cocharacter> dominant_below(const RootDatum& rd, const Cocharacter& mu) {
    if (!is_dominant(rd, mu)) throw std::invalid_argument("dominant_below: mu must be dominant");
    int m = rd.semisimple_rank();
    std::int64_t budget = dot(rd.two_rho, mu) / 2;  // <2rho, a_i^vee> = 2 bounds sum of coefficients
    std::vector<Cocharacter> out;
    IntVec coeff(m, 0);
    // enumerate coefficient vectors with bounded sum
    std::vector<int> idx;
    std::function<void(int, std::int64_t)> rec = [&](int pos, std::int64_t remaining) {
        if (pos == m) {
            IntVec lambda = mu;
            for (int i = 0; i < m; ++i) lambda = sub(lambda, scale(coeff[i], rd.simple_coroots[i]));
            if (is_dominant(rd, lambda)) out.push_back(lambda);
            return;
        }
        for (std::int64_t c = 0; c <= remaining; ++c) {
            coeff[pos] = c;
            rec(pos + 1, remaining - c);
        }
        coeff[pos] = 0;
    };
    rec(0, budget);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace aflag
