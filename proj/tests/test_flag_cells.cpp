#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "aflag/cells.hpp"

using namespace aflag;

namespace {

struct Setup {
    AffineWeylGroup w;
    FlagCells fc;
    explicit Setup(RootDatum rd) : w(std::move(rd)), fc(w) {}
};

Setup sl2() { return Setup(build_root_datum(GroupType::A, 1, Isogeny::SimplyConnected)); }
Setup gl2() { return Setup(build_root_datum(GroupType::GL, 2, Isogeny::GeneralLinear)); }

std::vector<Facet> all_facets(const FlagCells& fc) {
    int n = fc.group().simple_count();
    std::vector<Facet> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> type;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) type.push_back(i);
        try {
            out.push_back(fc.facet_from_type(type));
        } catch (const std::invalid_argument&) {
        }
    }
    return out;
}

}  // namespace

TEST_CASE("facet validity and barycenters") {
    Setup s = sl2();
    CHECK(all_facets(s.fc).size() == 3);  // {}, {s1}, {s0}; the full set is infinite type
    CHECK_THROWS(s.fc.facet_from_type({0, 1}));

    Setup a2 = Setup(build_root_datum(GroupType::A, 2, Isogeny::SimplyConnected));
    CHECK(all_facets(a2.fc).size() == 7);

    for (auto* setup : {&s, &a2}) {
        for (const Facet& f : all_facets(setup->fc)) {
            RationalPoint x = setup->fc.barycenter(f);
            for (int i = 0; i < setup->w.simple_count(); ++i) {
                Rational v = setup->w.evaluate(setup->w.simple_affine_roots()[i], x);
                bool in_type = std::find(f.type.begin(), f.type.end(), i) != f.type.end();
                if (in_type)
                    CHECK(v == Rational(0));
                else
                    CHECK(v > Rational(0));
            }
        }
    }
}

TEST_CASE("facet subgroups") {
    Setup s = sl2();
    CHECK(s.fc.facet_subgroup(s.fc.alcove_facet()).size() == 1);
    CHECK(s.fc.facet_subgroup(s.fc.base_point_facet()).size() == 2);

    Setup g2 = Setup(build_root_datum(GroupType::G, 2, Isogeny::SimplyConnected));
    CHECK(g2.fc.facet_subgroup(g2.fc.base_point_facet()).size() == 12);
}

TEST_CASE("double coset minimal representatives: examples") {
    Setup s = sl2();
    Facet base = s.fc.base_point_facet();
    CHECK(s.fc.double_coset_of(s.w.identity(), base, base).min_rep == s.w.identity());

    // spherical class of t_{alpha^vee}: minimum is the affine simple reflection
    DoubleCoset c = s.fc.double_coset_of(s.w.translation({1}), base, base);
    CHECK(s.w.length(c.min_rep) == 1);
    CHECK(c.min_rep == s.w.simple_reflections()[1]);

    // idempotent
    CHECK(s.fc.double_coset_of(c.min_rep, base, base).min_rep == c.min_rep);
}

TEST_CASE("double coset minimum is unique (verified by full enumeration)") {
    for (auto setup :
         {sl2(), gl2(), Setup(build_root_datum(GroupType::C, 2, Isogeny::SimplyConnected))}) {
        auto facets = all_facets(setup.fc);
        auto elements = setup.w.enumerate_by_length(3, {setup.w.identity()});
        for (const Facet& lf : facets)
            for (const Facet& rf : facets)
                for (const IWElement& e : elements) {
                    DoubleCoset c = setup.fc.double_coset_of(e, lf, rf);
                    auto all = setup.fc.double_coset_elements(c);
                    CHECK(std::find(all.begin(), all.end(), e) != all.end());
                    std::int64_t lmin = setup.w.length(c.min_rep);
                    int at_min = 0;
                    for (const auto& x : all) {
                        CHECK(setup.w.length(x) >= lmin);
                        if (setup.w.length(x) == lmin) ++at_min;
                    }
                    CHECK(at_min == 1);
                }
    }
}

TEST_CASE("coset length: the pinned examples") {
    Setup g = gl2();
    Facet base = g.fc.base_point_facet(), a0 = g.fc.alcove_facet();

    // spherical, label (1,0): <2rho, (1,0)> = 1
    DoubleCoset c1 = g.fc.bound_for_label({1, 0}, base, base);
    CHECK(g.fc.coset_length(c1) == 1);

    // Iwahori over the base point, label (0,1): 1 - 1 = 0
    DoubleCoset c2 = g.fc.bound_for_label({0, 1}, a0, base);
    CHECK(g.fc.coset_length(c2) == 0);
    CHECK(g.fc.coset_length(g.fc.double_coset_of(g.w.identity(), a0, base)) == 0);

    // spherical lengths match <2rho, mu> across a dominant sample
    Setup s = sl2();
    Facet sb = s.fc.base_point_facet();
    for (std::int64_t m = 0; m <= 4; ++m) {
        DoubleCoset c = s.fc.bound_for_label({m}, sb, sb);
        CHECK(s.fc.coset_length(c) == 2 * m);
    }
}

TEST_CASE("Iwahori length over the base point matches the closed formula") {
    // l(mu) = <2rho, mu_dom> - #{a > 0 : <a, mu> < 0}
    for (auto setup :
         {sl2(), gl2(), Setup(build_root_datum(GroupType::A, 2, Isogeny::SimplyConnected))}) {
        const RootDatum& rd = setup.w.datum();
        Facet base = setup.fc.base_point_facet(), a0 = setup.fc.alcove_facet();
        std::vector<Cocharacter> mus;
        if (rd.rank == 1) {
            for (std::int64_t m = -3; m <= 3; ++m) mus.push_back({m});
        } else {
            for (std::int64_t a = -2; a <= 2; ++a)
                for (std::int64_t b = -2; b <= 2; ++b) mus.push_back({a, b});
        }
        for (const auto& mu : mus) {
            Cocharacter dom = dominant_representative(rd, mu).dominant;
            std::int64_t expected = dot(rd.two_rho, dom);
            for (const Root& r : rd.positive_roots)
                if (dot(r.root, mu) < 0) --expected;
            DoubleCoset c = setup.fc.bound_for_label(mu, a0, base);
            CHECK(setup.fc.coset_length(c) == expected);
            // the labeling round-trips
            CHECK(setup.fc.cell_label(setup.fc.coset_min(setup.fc.element_for_label(mu), base)) ==
                  mu);
        }
    }
}

TEST_CASE("coset Bruhat order: reflexivity, facet mismatch, pi1 separation") {
    Setup s = sl2();
    Facet base = s.fc.base_point_facet(), a0 = s.fc.alcove_facet();
    DoubleCoset zero = s.fc.bound_for_label({0}, base, base);
    DoubleCoset one = s.fc.bound_for_label({1}, base, base);
    CHECK(s.fc.coset_bruhat_leq(zero, zero));
    CHECK(s.fc.coset_bruhat_leq(zero, one));
    CHECK_FALSE(s.fc.coset_bruhat_leq(one, zero));
    CHECK_THROWS(s.fc.coset_bruhat_leq(zero, s.fc.double_coset_of(s.w.identity(), a0, base)));

    Setup g = gl2();
    Facet gb = g.fc.base_point_facet();
    DoubleCoset c10 = g.fc.bound_for_label({1, 0}, gb, gb);
    DoubleCoset c00 = g.fc.bound_for_label({0, 0}, gb, gb);
    DoubleCoset c11 = g.fc.bound_for_label({1, 1}, gb, gb);
    CHECK_FALSE(g.fc.coset_bruhat_leq(c00, c10));
    CHECK_FALSE(g.fc.coset_bruhat_leq(c10, c00));
    CHECK_FALSE(g.fc.coset_bruhat_leq(c11, c10));
}

TEST_CASE("minimal-representative order agrees with the element-pair oracle") {
    for (auto setup :
         {sl2(), gl2(), Setup(build_root_datum(GroupType::C, 2, Isogeny::SimplyConnected))}) {
        auto facets = all_facets(setup.fc);
        auto elements = setup.w.enumerate_by_length(3, {setup.w.identity()});
        for (const Facet& lf : facets)
            for (const Facet& rf : facets) {
                std::set<IWElement> reps;
                std::vector<DoubleCoset> cosets;
                for (const IWElement& e : elements) {
                    DoubleCoset c = setup.fc.double_coset_of(e, lf, rf);
                    if (reps.insert(c.min_rep).second) cosets.push_back(c);
                }
                for (const auto& a : cosets)
                    for (const auto& b : cosets)
                        CHECK(setup.fc.coset_bruhat_leq(a, b) == setup.fc.coset_leq_by_pairs(a, b));
            }
    }
}

TEST_CASE("spherical order specializes to the dominance order (SL2 sample)") {
    Setup s = sl2();
    Facet base = s.fc.base_point_facet();
    const RootDatum& rd = s.w.datum();
    for (std::int64_t a = 0; a <= 4; ++a)
        for (std::int64_t b = 0; b <= 4; ++b) {
            bool dom = dominance_leq(rd, {a}, {b});
            bool coset = s.fc.coset_bruhat_leq(s.fc.bound_for_label({a}, base, base),
                                               s.fc.bound_for_label({b}, base, base));
            CHECK(dom == coset);
        }
}

TEST_CASE("cell dimensions: pinned examples") {
    Setup g = gl2();
    Facet base = g.fc.base_point_facet();
    CHECK(g.fc.cell_dimension(g.fc.bound_for_label({0, 0}, base, base)) == 0);
    CHECK(g.fc.cell_dimension(g.fc.bound_for_label({1, 0}, base, base)) == 1);

    Setup s = sl2();
    Facet sb = s.fc.base_point_facet();
    CHECK(s.fc.cell_dimension(s.fc.bound_for_label({1}, sb, sb)) == 2);
}

TEST_CASE("dimension by affine-root counting: examples") {
    Setup s = sl2();
    Facet base = s.fc.base_point_facet();
    CHECK(s.fc.cell_dimension_by_roots(s.w.identity(), base) == 0);

    // the minimal representative of the label-alpha^vee Iwahori cell has length 2
    IWElement rep = s.fc.coset_min(s.fc.element_for_label({1}), base);
    CHECK(s.w.length(rep) == 2);
    CHECK(s.fc.cell_dimension_by_roots(rep, base) == 2);

    Setup g = gl2();
    Facet gb = g.fc.base_point_facet();
    IWElement grep = g.fc.coset_min(g.fc.element_for_label({1, 0}), gb);
    CHECK(g.w.length(grep) == 1);
    CHECK(g.fc.cell_dimension_by_roots(grep, gb) == 1);
}

TEST_CASE("root-count law: equals length for minimal coset representatives") {
    for (auto setup :
         {sl2(), gl2(), Setup(build_root_datum(GroupType::A, 2, Isogeny::SimplyConnected))}) {
        auto facets = all_facets(setup.fc);
        auto elements = setup.w.enumerate_by_length(4, {setup.w.identity()});
        for (const Facet& f : facets)
            for (const IWElement& e : elements) {
                IWElement rep = setup.fc.coset_min(e, f);
                CHECK(setup.fc.cell_dimension_by_roots(rep, f) == setup.w.length(rep));
            }
    }
}

TEST_CASE("double-coset decomposition partitions each length ball") {
    for (auto setup : {sl2(), Setup(build_root_datum(GroupType::C, 2, Isogeny::SimplyConnected))}) {
        auto facets = all_facets(setup.fc);
        for (std::int64_t bound = 0; bound <= 4; ++bound) {
            auto ball = setup.w.enumerate_by_length(bound, {setup.w.identity()});
            for (const Facet& lf : facets)
                for (const Facet& rf : facets) {
                    std::set<IWElement> reps;
                    std::size_t covered = 0;
                    for (const IWElement& e : ball) {
                        DoubleCoset c = setup.fc.double_coset_of(e, lf, rf);
                        if (!reps.insert(c.min_rep).second) continue;
                        for (const IWElement& x : setup.fc.double_coset_elements(c))
                            if (setup.w.length(x) <= bound) ++covered;
                    }
                    CHECK(covered == ball.size());
                }
        }
    }
}

TEST_CASE("Schubert cells: the projective line over GL2") {
    Setup g = gl2();
    Facet base = g.fc.base_point_facet();
    CellTable t = g.fc.schubert_cells(g.fc.bound_for_label({1, 0}, base, base));
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].dim == 0);
    CHECK(t.rows[0].label == Cocharacter{0, 1});
    CHECK(t.rows[1].dim == 1);
    CHECK(t.rows[1].label == Cocharacter{1, 0});
    REQUIRE(t.covers.size() == 1);
    CHECK(t.covers[0] == std::pair<int, int>{0, 1});
}

TEST_CASE("Schubert cells: bound e over the base point is a single row") {
    Setup g = gl2();
    Facet base = g.fc.base_point_facet();
    CellTable t = g.fc.schubert_cells(g.fc.double_coset_of(g.w.identity(), base, base));
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].dim == 0);
    CHECK(t.covers.empty());
}

TEST_CASE("Schubert cells: SL2 spherical closure has the three-step refinement") {
    Setup s = sl2();
    Facet base = s.fc.base_point_facet();
    CellTable t = s.fc.schubert_cells(s.fc.bound_for_label({1}, base, base));
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].dim == 0);
    CHECK(t.rows[1].dim == 1);
    CHECK(t.rows[2].dim == 2);
    CHECK(t.rows[0].label == Cocharacter{0});
    CHECK(t.rows[1].label == Cocharacter{-1});
    CHECK(t.rows[2].label == Cocharacter{1});
    REQUIRE(t.covers.size() == 2);
    for (auto [a, b] : t.covers) CHECK(t.rows[b].dim == t.rows[a].dim + 1);
}

TEST_CASE("Schubert cells: covers raise dimension by exactly one across samples") {
    for (auto setup :
         {sl2(), gl2(), Setup(build_root_datum(GroupType::C, 2, Isogeny::SimplyConnected))}) {
        auto facets = all_facets(setup.fc);
        auto elements = setup.w.enumerate_by_length(3, {setup.w.identity()});
        for (const Facet& lf : facets)
            for (const Facet& rf : facets)
                for (const IWElement& e : elements) {
                    DoubleCoset c = setup.fc.double_coset_of(e, lf, rf);
                    if (setup.fc.coset_length(c) > 4) continue;
                    CellTable t = setup.fc.schubert_cells(c);
                    for (auto [a, b] : t.covers) CHECK(t.rows[b].dim == t.rows[a].dim + 1);
                    std::int64_t top = 0;
                    for (const auto& r : t.rows) top = std::max(top, r.dim);
                    CHECK(top == setup.fc.coset_length(c));
                }
    }
}

TEST_CASE("Schubert rows are stable under enlarging the enumeration window") {
    auto window_check = [](Setup& su, const DoubleCoset& bound) {
        CellTable t = su.fc.schubert_cells(bound);
        std::vector<IWElement> omega{su.w.omega_part(bound.min_rep)};
        std::set<IWElement> expected;
        for (const IWElement& x :
             su.w.enumerate_by_length(su.fc.coset_length(bound) + 3, omega)) {
            if (!(su.fc.coset_min(x, bound.right) == x)) continue;
            DoubleCoset cls = su.fc.double_coset_of(x, bound.left, bound.right);
            if (su.w.bruhat_leq(cls.min_rep, bound.min_rep)) expected.insert(x);
        }
        std::set<IWElement> got;
        for (const auto& r : t.rows) got.insert(r.min_rep);
        CHECK(got == expected);
    };

    Setup g = gl2();
    Facet gb = g.fc.base_point_facet();
    window_check(g, g.fc.bound_for_label({2, 0}, gb, gb));

    Setup p3 = Setup(build_root_datum(GroupType::A, 2, Isogeny::Adjoint));
    Facet pb = p3.fc.base_point_facet();
    window_check(p3, p3.fc.bound_for_label({1, 1}, pb, pb));

    // mixed parahoric pair on C2: left and right facets of different types
    Setup c2 = Setup(build_root_datum(GroupType::C, 2, Isogeny::SimplyConnected));
    Facet lf = c2.fc.facet_from_type({0});
    Facet rf = c2.fc.facet_from_type({1, 2});
    for (const IWElement& e : c2.w.enumerate_by_length(3, {c2.w.identity()}))
        window_check(c2, c2.fc.double_coset_of(e, lf, rf));
}

TEST_CASE("Schubert tables are identical across thread counts") {
    Setup s = Setup(build_root_datum(GroupType::C, 2, Isogeny::SimplyConnected));
    Facet base = s.fc.base_point_facet();
    DoubleCoset bound = s.fc.bound_for_label({1, 0}, base, base);
    CellTable a = s.fc.schubert_cells(bound, 1);
    CellTable b = s.fc.schubert_cells(bound, 4);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].min_rep == b.rows[i].min_rep);
        CHECK(a.rows[i].dim == b.rows[i].dim);
    }
    CHECK(a.covers == b.covers);
}

TEST_CASE("projection fibers: examples") {
    Setup s = sl2();
    Facet base = s.fc.base_point_facet(), a0 = s.fc.alcove_facet();

    // W_f trivial: a single zero-dimensional fiber
    auto trivial = s.fc.projection_fiber_decomposition(s.w.translation({1}), a0, a0);
    REQUIRE(trivial.size() == 1);
    CHECK(trivial[0].second == 0);

    // coset of t_{alpha^vee} over the base point: one section, one line
    auto fibers = s.fc.projection_fiber_decomposition(s.w.translation({1}), a0, base);
    REQUIRE(fibers.size() == 2);
    CHECK(fibers[0].second == 0);
    CHECK(fibers[0].first == s.w.simple_reflections()[1]);  // t_{alpha^vee} s
    CHECK(fibers[1].second == 1);
    CHECK(fibers[1].first == s.w.translation({1}));

    CHECK_THROWS(s.fc.projection_fiber_decomposition(s.w.identity(), base, a0));
}

TEST_CASE("fiber dimension polynomial identity over sampled cosets") {
    for (auto setup :
         {sl2(), gl2(), Setup(build_root_datum(GroupType::G, 2, Isogeny::SimplyConnected))}) {
        Facet a0 = setup.fc.alcove_facet();
        auto facets = all_facets(setup.fc);
        auto elements = setup.w.enumerate_by_length(4, {setup.w.identity()});
        for (const Facet& f : facets) {
            auto wf = setup.fc.facet_subgroup(f);
            std::map<std::int64_t, std::int64_t> wfq;
            for (const auto& u : wf) ++wfq[setup.w.length(u)];
            for (const IWElement& e : elements) {
                IWElement wmin = setup.fc.coset_min(e, f);
                if (!(wmin == e)) continue;
                auto fibers = setup.fc.projection_fiber_decomposition(e, a0, f);
                std::map<std::int64_t, std::int64_t> lhs, rhs;
                int zero_fibers = 0;
                for (auto& [v, rel] : fibers) {
                    ++lhs[setup.w.length(v)];
                    if (rel == 0) ++zero_fibers;
                }
                CHECK(zero_fibers == 1);
                for (auto [l, c] : wfq) rhs[l + setup.w.length(wmin)] += c;
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("general fine facets: fibers are parahoric coset counts") {
    Setup c2 = Setup(build_root_datum(GroupType::C, 2, Isogeny::SimplyConnected));
    Facet base = c2.fc.base_point_facet();
    // fine facet J' = {first finite simple}, inside J = both finite simples
    Facet fine = c2.fc.facet_from_type({base.type[0]});
    auto fibers = c2.fc.projection_fiber_decomposition(c2.w.identity(), fine, base);
    // |W_J| / |W_J'| cosets, exactly one of relative dimension zero
    CHECK(fibers.size() == c2.fc.facet_subgroup(base).size() / c2.fc.facet_subgroup(fine).size());
    int zero = 0;
    for (auto& [v, rel] : fibers)
        if (rel == 0) ++zero;
    CHECK(zero == 1);
}
