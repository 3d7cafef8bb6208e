#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aflag/root_datum.hpp"

using namespace aflag;

namespace {

RootDatum sl2() { return build_root_datum(GroupType::A, 1, Isogeny::SimplyConnected); }
RootDatum pgl2() { return build_root_datum(GroupType::A, 1, Isogeny::Adjoint); }
RootDatum gl2() { return build_root_datum(GroupType::GL, 2, Isogeny::GeneralLinear); }

void check_invariants(const RootDatum& rd) {
    // pairings of simple roots and coroots reproduce the Cartan matrix
    for (int i = 0; i < rd.semisimple_rank(); ++i)
        for (int j = 0; j < rd.semisimple_rank(); ++j)
            CHECK(dot(rd.simple_roots[i], rd.simple_coroots[j]) == rd.cartan(i, j));
    // 2rho pairs to 2 with every simple coroot
    for (int j = 0; j < rd.semisimple_rank(); ++j)
        CHECK(dot(rd.two_rho, rd.simple_coroots[j]) == 2);
    // positive roots are nonnegative integer combinations of simple roots
    for (const Root& r : rd.positive_roots) {
        IntVec rebuilt(rd.rank, 0);
        for (int i = 0; i < rd.semisimple_rank(); ++i) {
            CHECK(r.coeffs[i] >= 0);
            rebuilt = add(rebuilt, scale(r.coeffs[i], rd.simple_roots[i]));
        }
        CHECK(rebuilt == r.root);
    }
}

}  // namespace

TEST_CASE("cartan data across the supported types") {
    struct Case {
        GroupType t;
        int rank;
        std::size_t positive_roots;
    };
    const Case cases[] = {
        {GroupType::A, 1, 1},  {GroupType::A, 2, 3},  {GroupType::A, 3, 6},
        {GroupType::B, 2, 4},  {GroupType::B, 3, 9},  {GroupType::C, 2, 4},
        {GroupType::C, 3, 9},  {GroupType::D, 4, 12}, {GroupType::G, 2, 6},
        {GroupType::F, 4, 24}, {GroupType::E, 6, 36},
    };
    for (const auto& c : cases) {
        for (Isogeny iso : {Isogeny::SimplyConnected, Isogeny::Adjoint}) {
            RootDatum rd = build_root_datum(c.t, c.rank, iso);
            CHECK(rd.positive_roots.size() == c.positive_roots);
            check_invariants(rd);
        }
    }
    for (int n : {1, 2, 3, 4}) {
        RootDatum rd = build_root_datum(GroupType::GL, n, Isogeny::GeneralLinear);
        CHECK(rd.positive_roots.size() == static_cast<std::size_t>(n * (n - 1) / 2));
        check_invariants(rd);
    }
}

TEST_CASE("invalid type and rank combinations are rejected") {
    CHECK_THROWS(build_root_datum(GroupType::B, 1, Isogeny::SimplyConnected));
    CHECK_THROWS(build_root_datum(GroupType::E, 9, Isogeny::Adjoint));
    CHECK_THROWS(build_root_datum(GroupType::F, 3, Isogeny::SimplyConnected));
    CHECK_THROWS(build_root_datum(GroupType::G, 3, Isogeny::Adjoint));
    CHECK_THROWS(build_root_datum(GroupType::A, 2, Isogeny::GeneralLinear));
    CHECK_THROWS(build_root_datum(GroupType::GL, 2, Isogeny::SimplyConnected));
}

TEST_CASE("SL2: rank one simply connected datum") {
    RootDatum rd = sl2();
    CHECK(rd.rank == 1);
    CHECK(rd.simple_coroots[0] == IntVec{1});
    CHECK(rd.simple_roots[0] == IntVec{2});  // <alpha, alpha^vee> = 2
    CHECK(rd.two_rho == IntVec{2});
    CHECK(rd.pi1_factors.empty());
    CHECK(rd.torus_rank == 0);
}

TEST_CASE("GL2: standard basis datum with free pi1") {
    RootDatum rd = gl2();
    CHECK(rd.rank == 2);
    CHECK(rd.positive_roots.size() == 1);
    CHECK(rd.positive_roots[0].root == IntVec{1, -1});
    CHECK(rd.two_rho == IntVec{1, -1});
    CHECK(rd.pi1_factors == std::vector<std::int64_t>{0});
    CHECK(rd.torus_rank == 1);
}

TEST_CASE("PGL2: adjoint datum with pi1 = Z/2") {
    RootDatum rd = pgl2();
    CHECK(rd.simple_coroots[0] == IntVec{2});  // alpha^vee = 2 omega
    CHECK(rd.pi1_factors == std::vector<std::int64_t>{2});
    CHECK(pi1_class(rd, {1}) == IntVec{1});
    CHECK(pi1_class(rd, {2}) == IntVec{0});
}

TEST_CASE("is_dominant") {
    RootDatum s = sl2();
    CHECK(is_dominant(s, {1}));
    RootDatum g = gl2();
    CHECK_FALSE(is_dominant(g, {0, 1}));
    CHECK(is_dominant(g, {1, 0}));
    CHECK(is_dominant(g, {1, 1}));
}

TEST_CASE("dominance order examples") {
    RootDatum g = gl2();
    CHECK(dominance_leq(g, {1, 0}, {1, 0}));
    CHECK(dominance_leq(g, {0, 0}, {1, -1}));
    CHECK_FALSE(dominance_leq(g, {1, -1}, {0, 0}));
    CHECK_FALSE(dominance_leq(g, {0, 0}, {1, 0}));  // classes differ in pi1

    RootDatum p = pgl2();
    CHECK(dominance_leq(p, {1}, {3}));
    CHECK_FALSE(dominance_leq(p, {1}, {2}));
    CHECK_THROWS(dominance_leq(p, {-1}, {1}));
}

TEST_CASE("dominance order is a partial order on sampled dominant cocharacters") {
    for (const RootDatum& rd :
         {build_root_datum(GroupType::A, 2, Isogeny::SimplyConnected), gl2(), pgl2()}) {
        std::mt19937 rng(7);
        std::uniform_int_distribution<std::int64_t> dist(-4, 4);
        std::vector<Cocharacter> doms;
        while (doms.size() < 12) {
            Cocharacter mu(rd.rank);
            for (auto& x : mu) x = dist(rng);
            doms.push_back(dominant_representative(rd, mu).dominant);
        }
        for (const auto& a : doms) {
            CHECK(dominance_leq(rd, a, a));
            for (const auto& b : doms) {
                if (dominance_leq(rd, a, b) && dominance_leq(rd, b, a)) CHECK(a == b);
                for (const auto& c : doms)
                    if (dominance_leq(rd, a, b) && dominance_leq(rd, b, c))
                        CHECK(dominance_leq(rd, a, c));
            }
        }
    }
}

TEST_CASE("dominant representative examples and orbit membership") {
    RootDatum g = gl2();
    auto rep = dominant_representative(g, {0, 1});
    CHECK(rep.dominant == Cocharacter{1, 0});
    CHECK(rep.word == std::vector<int>{0});

    RootDatum s = sl2();
    auto rep2 = dominant_representative(s, {-1});
    CHECK(rep2.dominant == Cocharacter{1});
    CHECK(rep2.word == std::vector<int>{0});

    auto rep3 = dominant_representative(s, {3});
    CHECK(rep3.dominant == Cocharacter{3});
    CHECK(rep3.word.empty());
}

TEST_CASE("dominant representative confirmed by full Weyl orbit enumeration") {
    for (const RootDatum& rd : {build_root_datum(GroupType::A, 2, Isogeny::SimplyConnected),
                                build_root_datum(GroupType::C, 2, Isogeny::SimplyConnected), gl2()}) {
        std::mt19937 rng(11);
        std::uniform_int_distribution<std::int64_t> dist(-20, 20);
        for (int trial = 0; trial < 2000; ++trial) {
            Cocharacter mu(rd.rank);
            for (auto& x : mu) x = dist(rng);
            auto rep = dominant_representative(rd, mu);
            CHECK(is_dominant(rd, rep.dominant));
            auto orbit = weyl_orbit(rd, mu);
            CHECK(orbit.count(rep.dominant) == 1);
            // replaying the word lands on the representative
            Cocharacter replay = mu;
            for (int i : rep.word) replay = apply_simple_coreflection(rd, i, replay);
            CHECK(replay == rep.dominant);
            // the dominant element of an orbit is unique
            int dominant_count = 0;
            for (const auto& v : orbit)
                if (is_dominant(rd, v)) ++dominant_count;
            CHECK(dominant_count == 1);
        }
    }
}

TEST_CASE("pi1 classes: examples and additivity") {
    RootDatum s = sl2();
    CHECK(pi1_class(s, {5}) == IntVec{});

    RootDatum p = pgl2();
    CHECK(pi1_class(p, {1}) == IntVec{1});

    RootDatum g = gl2();
    CHECK(pi1_class(g, {1, 0}) == IntVec{1});
    CHECK(pi1_class(g, {2, 3}) == IntVec{5});

    std::mt19937 rng(3);
    std::uniform_int_distribution<std::int64_t> dist(-9, 9);
    for (const RootDatum& rd : {p, g, build_root_datum(GroupType::D, 4, Isogeny::Adjoint)}) {
        for (int trial = 0; trial < 100; ++trial) {
            Cocharacter a(rd.rank), b(rd.rank);
            for (auto& x : a) x = dist(rng);
            for (auto& x : b) x = dist(rng);
            CHECK(pi1_add(rd, pi1_class(rd, a), pi1_class(rd, b)) == pi1_class(rd, add(a, b)));
        }
    }
}

TEST_CASE("pi1 matches the declared isogeny class") {
    CHECK(build_root_datum(GroupType::A, 2, Isogeny::Adjoint).pi1_factors ==
          std::vector<std::int64_t>{3});
    CHECK(build_root_datum(GroupType::C, 3, Isogeny::Adjoint).pi1_factors ==
          std::vector<std::int64_t>{2});
    CHECK(build_root_datum(GroupType::D, 4, Isogeny::Adjoint).pi1_factors ==
          std::vector<std::int64_t>{2, 2});
    CHECK(build_root_datum(GroupType::G, 2, Isogeny::Adjoint).pi1_factors.empty());
    CHECK(build_root_datum(GroupType::E, 6, Isogeny::Adjoint).pi1_factors ==
          std::vector<std::int64_t>{3});
    for (auto t : {GroupType::A, GroupType::B, GroupType::C, GroupType::D})
        CHECK(build_root_datum(t, 4, Isogeny::SimplyConnected).pi1_factors.empty());
}

TEST_CASE("pi1 lift inverts pi1_class") {
    for (const RootDatum& rd : {pgl2(), gl2(), build_root_datum(GroupType::D, 4, Isogeny::Adjoint)}) {
        std::mt19937 rng(5);
        std::uniform_int_distribution<std::int64_t> dist(-6, 6);
        for (int trial = 0; trial < 50; ++trial) {
            Cocharacter mu(rd.rank);
            for (auto& x : mu) x = dist(rng);
            IntVec cls = pi1_class(rd, mu);
            CHECK(pi1_class(rd, pi1_lift(rd, cls)) == cls);
        }
    }
}

TEST_CASE("product data") {
    RootDatum prod = direct_sum(sl2(), sl2());
    CHECK(prod.rank == 2);
    CHECK(prod.component_count == 2);
    CHECK(prod.positive_roots.size() == 2);
    CHECK(prod.pi1_factors.empty());
    check_invariants(prod);
}

TEST_CASE("dominant_below enumerations") {
    RootDatum s = sl2();
    auto below = dominant_below(s, {2});
    CHECK(below == std::vector<Cocharacter>{{0}, {1}, {2}});
    RootDatum p = pgl2();
    auto below2 = dominant_below(p, {2});
    CHECK(below2 == std::vector<Cocharacter>{{0}, {2}});
    auto below3 = dominant_below(p, {3});
    CHECK(below3 == std::vector<Cocharacter>{{1}, {3}});
}
