#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "strata/hasse.hpp"

using namespace strata;

TEST_CASE("searched data satisfy the structural and derived conditions") {
    for (auto nq : {std::pair{1, 2}, {1, 4}, {2, 2}, {2, 4}, {3, 3}}) {
        int n = nq.first, q = nq.second;
        auto [p, f] = split_prime_power(q);
        Fq F(p, f);
        long long target = 60;
        std::set<std::string> labels;
        long long bm_cases = 0;
        SearchStats stats = search_examples(F, n, target, 100 * target, 17,
            [&](const DieudonneDatum& d) {
                DieudonneDatum copy = d;
                CHECK_NOTHROW(validate_datum(copy));
                Subspace F1 = conjugate_F(d, 1);
                Subspace F2 = conjugate_F(d, 2);
                CHECK(F1.dim() == 1);
                CHECK(F2.dim() == d.S.b);
                CHECK(subspace_leq(*d.S.F, F1, d.S.ker_pi()));
                CHECK(orthogonal_modified(d.S, F1) == F2);

                Invariants4 inv = invariants4(d);
                bool both_sections = inv.b_nonzero && inv.m_nonzero;
                CHECK_FALSE(both_sections); // bm = 0
                if (!inv.b_nonzero && inv.hasse1_zero) CHECK(inv.hasse2_zero);
                bool both_hasse = inv.hasse1_zero && inv.hasse2_zero;
                if (inv.b_nonzero) CHECK_FALSE(both_hasse);
                if (inv.b_nonzero || inv.m_nonzero) ++bm_cases;

                Stratum9 s = stratum9(d);
                labels.insert(stratum9_name(s));
                if (n <= 2) {
                    CHECK(s != Stratum9::R1);
                    CHECK(s != Stratum9::P1);
                }
                // Refined label sits over the coarse one.
                CHECK(coarse_of(s) == invariants(d.S, d.x));
                // Data with m(x) = 0 carry a recorded similitude unit.
                if (!inv.m_nonzero) CHECK(d.unit != 0);
            });
        CHECK(stats.accepted == target);
        CHECK(bm_cases > 0);
        if (n == 1) {
            for (const auto& name : labels)
                CHECK(std::set<std::string>{"Xord", "R2", "B0", "B1", "B2", "P0", "P2"}
                          .count(name));
        }
    }
}

TEST_CASE("stratum label is invariant under frame automorphisms") {
    Fq F(2, 2);
    std::mt19937_64 rng(5);
    search_examples(F, 2, 25, 4000, 23, [&](const DieudonneDatum& d) {
        Stratum9 s = stratum9(d);
        for (int i = 0; i < 3; ++i) {
            DieudonneDatum dc = conjugate_datum(d, rng);
            CHECK(stratum9(dc) == s);
            CHECK(invariants(dc.S, dc.x) == invariants(d.S, d.x));
        }
    });
}

TEST_CASE("datum validation rejects broken inputs") {
    Fq F(3, 1);
    PiSpace S = standard_space(F, 1, 1, FormCase::OddChar);
    DieudonneDatum d;
    d.S = S;
    d.x.omega = S.ker_pi();
    Mat z(2, 1);
    z.at(0, 0) = 1;
    d.x.omega1 = Subspace(F, 4, S.embed_f(z));
    d.V = Mat(4, 4);
    // Zero V has the wrong rank.
    CHECK_THROWS_AS(validate_datum(d), std::invalid_argument);
    // A non-similitude lower-left block fails the unit condition.
    d.V.at(2, 0) = 1;
    d.V.at(2, 1) = 1;
    d.V.at(3, 1) = 1; // S = [[1,1],[0,1]]: S^T Q S has nonzero diagonal
    CHECK_THROWS_AS(validate_datum(d), std::invalid_argument);
    // S = diag(1,2) scales the hyperbolic form: unit 2.
    d.V.at(2, 1) = 0;
    d.V.at(3, 1) = 2;
    CHECK_NOTHROW(validate_datum(d));
    CHECK(d.unit == 2);
}

namespace {
bool set_eq(const std::set<Stratum9>& a, const std::set<Stratum9>& b) { return a == b; }
} // namespace

TEST_CASE("closure fixtures for the refined stratification") {
    using S9 = Stratum9;
    SUBCASE("n = 1") {
        auto cl = poset9(1);
        CHECK(set_eq(cl.at(S9::Xord), std::set<S9>{S9::Xord, S9::P0}));
        CHECK(set_eq(cl.at(S9::R2), std::set<S9>{S9::R2, S9::P2}));
        CHECK(set_eq(cl.at(S9::B0), std::set<S9>{S9::B0, S9::B1, S9::B2, S9::P0, S9::P2}));
        CHECK(set_eq(cl.at(S9::B1), std::set<S9>{S9::B1}));
        CHECK(set_eq(cl.at(S9::B2), std::set<S9>{S9::B2}));
        CHECK(set_eq(cl.at(S9::P0), std::set<S9>{S9::P0}));
        CHECK(set_eq(cl.at(S9::P2), std::set<S9>{S9::P2}));
        CHECK(cl.count(S9::R1) == 0);
        CHECK(cl.count(S9::P1) == 0);
    }
    SUBCASE("n = 2: the everywhere-empty strata are removed") {
        auto cl = poset9(2);
        CHECK(cl.count(S9::R1) == 0);
        CHECK(cl.count(S9::P1) == 0);
        CHECK(set_eq(cl.at(S9::B1), std::set<S9>{S9::B1, S9::P2}));
        CHECK(set_eq(cl.at(S9::Xord), std::set<S9>{S9::Xord, S9::R2, S9::P0, S9::P2}));
        CHECK(set_eq(cl.at(S9::P0), std::set<S9>{S9::P0, S9::P2}));
    }
    SUBCASE("n = 3") {
        auto cl = poset9(3);
        CHECK(set_eq(cl.at(S9::R1), std::set<S9>{S9::R1, S9::R2, S9::P1, S9::P2}));
        CHECK(set_eq(cl.at(S9::P1), std::set<S9>{S9::P1, S9::P2}));
        CHECK(set_eq(cl.at(S9::B1), std::set<S9>{S9::B1, S9::P1, S9::P2}));
        CHECK(set_eq(cl.at(S9::Xord), std::set<S9>{S9::Xord, S9::R1, S9::R2, S9::P0, S9::P1, S9::P2}));
    }
}

TEST_CASE("closure data behave as a poset compatible with the coarse order") {
    for (int n : {1, 2, 3}) {
        auto cl = poset9(n);
        for (const auto& [s, cs] : cl) {
            CHECK(cs.count(s) == 1); // reflexive
            for (Stratum9 t : cs) {
                REQUIRE(cl.count(t) == 1);
                for (Stratum9 u : cl.at(t)) CHECK(cs.count(u) == 1); // transitive
                CHECK(stratum_leq(coarse_of(t), coarse_of(s)));       // coarse map
            }
        }
        // Edge list matches the closure sets.
        auto edges = poset9_edges(n);
        for (auto& [s, t] : edges) CHECK(cl.at(s).count(t) == 1);
    }
    CHECK_THROWS_AS(poset9(0), std::invalid_argument);
}
