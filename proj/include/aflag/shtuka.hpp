#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aflag/kl.hpp"

namespace aflag {

/// Bound for an iterated shtuka datum: an ordered index set partitioned into
/// contiguous blocks, one dominant cocharacter per index, and the degree of
/// the level divisor (metadata; it does not enter any computation here).
struct BoundTuple {
    std::vector<std::vector<int>> partition;  // contiguous blocks covering 1..n
    std::vector<Cocharacter> mu;              // one dominant cocharacter per index
    std::int64_t level_degree = 0;

    int legs() const { return static_cast<int>(mu.size()); }
};

inline void validate_bound_tuple(const RootDatum& rd, const BoundTuple& b) {
    int n = b.legs();
    for (const auto& m : b.mu) {
        if (static_cast<int>(m.size()) != rd.rank)
            throw std::invalid_argument("bound tuple: cocharacter rank mismatch");
        if (!is_dominant(rd, m)) throw std::invalid_argument("bound tuple: entry not dominant");
    }
    if (b.level_degree < 0) throw std::invalid_argument("bound tuple: negative level degree");
    int next = 1;
    for (const auto& block : b.partition) {
        if (block.empty()) throw std::invalid_argument("bound tuple: empty partition block");
        for (int i : block) {
            if (i != next) throw std::invalid_argument("bound tuple: partition not contiguous");
            ++next;
        }
    }
    if (next != n + 1) throw std::invalid_argument("bound tuple: partition does not cover the index set");
}

/// Admissibility: the tuple sums to zero in pi1(G).
inline bool is_admissible(const RootDatum& rd, const std::vector<Cocharacter>& mu) {
    IntVec total = pi1_zero(rd);
    for (const auto& m : mu) {
        if (!is_dominant(rd, m)) throw std::invalid_argument("is_admissible: entry not dominant");
        total = pi1_add(rd, total, pi1_class(rd, m));
    }
    for (auto v : total)
        if (v != 0) return false;
    return true;
}

/// Sum over the legs of <2rho, mu_i>: the dimension of the bound, equal to
/// the top degree of the local model class.
inline std::int64_t bound_dimension(const RootDatum& rd, const BoundTuple& b) {
    std::int64_t total = 0;
    for (const auto& m : b.mu) {
        if (!is_dominant(rd, m)) throw std::invalid_argument("bound_dimension: entry not dominant");
        total += dot(rd.two_rho, m);
    }
    return total;
}

/// Product over the legs of the Schubert class of the spherical closure
/// bounded by mu_i.
inline MotiveClass local_model_class(const FlagCells& fc, const BoundTuple& b, int threads = 1,
                                     std::int64_t enum_cap = 24) {
    const RootDatum& rd = fc.group().datum();
    validate_bound_tuple(rd, b);
    if (!is_admissible(rd, b.mu))
        throw std::invalid_argument("local_model_class: tuple is not admissible");
    MotiveClass total;
    total.poly = TatePoly(1);
    total.provenance = "local-model";
    Facet base = fc.base_point_facet();
    for (const auto& m : b.mu) {
        CellTable t = fc.schubert_cells(fc.bound_for_label(m, base, base), threads, enum_cap);
        total.poly *= class_of_cell_table(t).poly;
    }
    return total;
}

/// Product over the legs of the intersection-motive classes; specializing
/// every Kazhdan-Lusztig polynomial to 1 recovers the local model class.
inline ICClass ic_box_class(const FlagCells& fc, KLContext& kl, const BoundTuple& b,
                            int threads = 1, std::int64_t enum_cap = 24) {
    const RootDatum& rd = fc.group().datum();
    validate_bound_tuple(rd, b);
    if (!is_admissible(rd, b.mu))
        throw std::invalid_argument("ic_box_class: tuple is not admissible");
    Facet base = fc.base_point_facet();
    ICClass out;
    out.poly = TatePoly(1);
    Cocharacter total(rd.rank, 0);
    for (const auto& m : b.mu) {
        CellTable t = fc.schubert_cells(fc.bound_for_label(m, base, base), threads, enum_cap);
        out.poly *= ic_class(fc, kl, t).poly;
        total = add(total, m);
    }
    out.bound = fc.bound_for_label(total, base, base);
    return out;
}

/// Strata of the diagonal degeneration of a two-leg bound: the dominant
/// cocharacters below mu1 + mu2.
inline std::vector<Cocharacter> fusion_degenerate(const RootDatum& rd, const Cocharacter& mu1,
                                                  const Cocharacter& mu2) {
    if (!is_dominant(rd, mu1) || !is_dominant(rd, mu2))
        throw std::invalid_argument("fusion_degenerate: inputs must be dominant");
    return dominant_below(rd, add(mu1, mu2));
}

/// Per-leg dominance posets truncated below each bound, plus the diagonal
/// degeneration of the whole tuple.
struct FusionPoset {
    std::vector<std::vector<Cocharacter>> leg_strata;
    std::vector<Cocharacter> diagonal_strata;
};

inline FusionPoset fusion_poset(const RootDatum& rd, const BoundTuple& b) {
    validate_bound_tuple(rd, b);
    FusionPoset fp;
    Cocharacter total(rd.rank, 0);
    for (const auto& m : b.mu) {
        fp.leg_strata.push_back(dominant_below(rd, m));
        total = add(total, m);
    }
    fp.diagonal_strata = dominant_below(rd, total);
    return fp;
}

}  // namespace aflag
