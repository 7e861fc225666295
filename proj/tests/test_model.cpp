#include <doctest.h>

#include "fixtures.hpp"
#include "quorumlace/oracle.hpp"
#include "quorumlace/rng.hpp"

using namespace quorumlace;
using quorumlace::testing::e1;
using quorumlace::testing::e4;
using quorumlace::testing::ids;

TEST_CASE("normalize_config enforces the antichain over the trusted set") {
    Universe u{{"p1", "p2", "p3"}};
    ProcSet trusted = u.parse_set({"p1", "p2"});

    SUBCASE("intersection with trusted and duplicate collapse") {
        Configuration c = normalize_config(
            trusted, {u.parse_set({"p2"}), u.parse_set({"p2", "p3"})});
        REQUIRE(c.fail_prone.size() == 1);
        CHECK(c.fail_prone[0] == u.parse_set({"p2"}));
    }
    SUBCASE("supersets are dropped, minimal members kept") {
        Universe u4{{"p1", "p2", "p3", "p4"}};
        Configuration c = normalize_config(
            u4.full(), {u4.parse_set({"p1"}), u4.parse_set({"p1", "p2"}), u4.parse_set({"p3"})});
        CHECK(c.fail_prone == std::vector<ProcSet>{u4.parse_set({"p1"}), u4.parse_set({"p3"})});
    }
    SUBCASE("no fail-prone sets means the no-failure assumption") {
        Configuration c = normalize_config(u.parse_set({"p1"}), {});
        REQUIRE(c.fail_prone.size() == 1);
        CHECK(c.fail_prone[0].empty());
    }
    SUBCASE("empty trusted set is rejected") {
        CHECK_THROWS_AS(normalize_config(ProcSet{}, {}), InputError);
    }
    SUBCASE("fixture configuration is already normal") {
        const Pfps& f = e4();
        CHECK(f.config(0).fail_prone == std::vector<ProcSet>{ids(f, {"p3", "p4"})});
    }
}

TEST_CASE("slices are trusted-set complements of the fail-prone sets") {
    const Pfps& f = e4();
    CHECK(f.config(f.universe.index("p1")).slices() ==
          std::vector<ProcSet>{ids(f, {"p1", "p2"})});
    CHECK(f.config(f.universe.index("p4")).slices() ==
          std::vector<ProcSet>{ids(f, {"p3", "p4"})});
    Pfps one = e1();
    CHECK(one.config(0).slices() == std::vector<ProcSet>{one.universe.full()});

    Universe u{{"p1"}};
    Configuration degenerate = normalize_config(u.full(), {u.full()});
    CHECK(degenerate.degenerate());
    CHECK_FALSE(e4().config(0).degenerate());
}

TEST_CASE("has_slice_in") {
    const Pfps& f = e4();
    CHECK(has_slice_in(f.config(0), ids(f, {"p1", "p2", "p3"})));
    CHECK_FALSE(has_slice_in(f.config(3), ids(f, {"p1", "p2"})));
    for (int p = 0; p < f.size(); ++p) {
        CHECK(has_slice_in(f.config(p), f.universe.full()));
    }
}

TEST_CASE("max_closed_subset is the greatest self-supporting subset") {
    const Pfps& f = e4();
    CHECK(max_closed_subset(f, ids(f, {"p2", "p3"})) == ids(f, {"p2", "p3"}));
    CHECK(max_closed_subset(f, ids(f, {"p1", "p2"})).empty());
    CHECK(max_closed_subset(f, ProcSet{}).empty());

    SUBCASE("monotone and idempotent") {
        Rng rng(7);
        for (int k = 0; k < 50; ++k) {
            Pfps g = fuzz::random_pfps(5, rng);
            ProcSet a(rng.below(32));
            ProcSet b(rng.below(32));
            ProcSet ma = max_closed_subset(g, a);
            CHECK(ma.subset_of(max_closed_subset(g, a | b)));
            CHECK(max_closed_subset(g, ma) == ma);
        }
    }
    SUBCASE("unknown entries impose no constraint") {
        View v = View::bottom(f.size());
        v.set(1, f.config(1));
        // p1 and p4 are unknown, so only p2's slice requirement applies.
        CHECK(max_closed_subset(f, v, ids(f, {"p1", "p2", "p3", "p4"})) == f.universe.full());
        CHECK(max_closed_subset(f, v, ids(f, {"p1", "p2"})) == ids(f, {"p1"}));
    }
}

TEST_CASE("survivor sets match the exhaustive enumeration") {
    const Pfps& f = e4();
    auto p = [&](const char* id) { return f.universe.index(id); };

    SUBCASE("minimal families") {
        CHECK(survivor_sets(f, p("p1")) == std::vector<ProcSet>{ids(f, {"p1", "p2", "p3"})});
        CHECK(survivor_sets(f, p("p2")) == std::vector<ProcSet>{ids(f, {"p2", "p3"})});
        CHECK(survivor_sets(f, p("p3")) == std::vector<ProcSet>{ids(f, {"p2", "p3"})});
        CHECK(survivor_sets(f, p("p4")) == std::vector<ProcSet>{ids(f, {"p2", "p3", "p4"})});
    }
    SUBCASE("include-all families contain the published ones") {
        auto s1 = survivor_sets(f, p("p1"), true);
        CHECK(s1 == std::vector<ProcSet>{ids(f, {"p1", "p2", "p3"}), f.universe.full()});
        auto s2 = survivor_sets(f, p("p2"), true);
        CHECK(std::find(s2.begin(), s2.end(), ids(f, {"p2", "p3"})) != s2.end());
        CHECK(std::find(s2.begin(), s2.end(), f.universe.full()) != s2.end());
        auto s4 = survivor_sets(f, p("p4"), true);
        CHECK(s4 == std::vector<ProcSet>{ids(f, {"p2", "p3", "p4"}), f.universe.full()});
    }
    SUBCASE("oracle agreement on random instances") {
        Rng rng(11);
        for (int k = 0; k < 30; ++k) {
            Pfps g = fuzz::random_pfps(5, rng);
            for (int q = 0; q < g.size(); ++q) {
                CHECK(survivor_sets(g, q, true) == oracle::closed_rooted_sets(g, q, false));
                CHECK(survivor_sets(g, q, false) == oracle::closed_rooted_sets(g, q, true));
            }
        }
    }
    SUBCASE("singleton universe") {
        Pfps one = e1();
        CHECK(survivor_sets(one, 0) == std::vector<ProcSet>{one.universe.full()});
    }
}

TEST_CASE("tolerates and tolerated_by") {
    const Pfps& f = e4();
    int p2 = f.universe.index("p2");
    CHECK(tolerates(f, p2, ids(f, {"p1", "p4"})));
    CHECK_FALSE(tolerates(f, p2, ids(f, {"p2", "p3"})));
    for (int p = 0; p < f.size(); ++p) {
        CHECK(tolerates(f, p, ProcSet{}));
    }
    CHECK(tolerated_by(f, f.universe.full(), ids(f, {"p1", "p4"})));
    CHECK_FALSE(tolerated_by(f, f.universe.full(), ids(f, {"p2"})));
    CHECK(tolerated_by(f, ids(f, {"p1"}), ids(f, {"p1", "p2"}))); // vacuous

    SUBCASE("agrees with both oracle readings everywhere") {
        Rng rng(13);
        for (int k = 0; k < 20; ++k) {
            Pfps g = fuzz::random_pfps(5, rng);
            CHECK(fuzz::check_tolerance(g).empty());
        }
    }
}

TEST_CASE("quorum function over views") {
    const Pfps& f = e4();
    View full = View::full(f);
    int p1 = f.universe.index("p1");
    int p2 = f.universe.index("p2");
    int p4 = f.universe.index("p4");

    CHECK(is_quorum(f, full, p2, ids(f, {"p2", "p3"})));
    CHECK_FALSE(is_quorum(f, full, p1, ids(f, {"p1", "p2"})));
    Pfps one = e1();
    CHECK(is_quorum(one, View::full(one), 0, one.universe.full()));

    SUBCASE("own entry must be known") {
        View v = View::bottom(f.size());
        CHECK_THROWS_AS(is_quorum(f, v, p1, f.universe.full()), ContractError);
        CHECK_THROWS_AS(quorums(f, v, p1, true), ContractError);
        CHECK_THROWS_AS(contains_quorum(f, v, p1, f.universe.full()), ContractError);
    }
    SUBCASE("enumeration") {
        CHECK(quorums(f, full, p4, false) ==
              std::vector<ProcSet>{ids(f, {"p2", "p3", "p4"}), f.universe.full()});
        View wc = worst_case_view(f, ids(f, {"p4"}));
        CHECK(quorums(f, wc, p1, true) == std::vector<ProcSet>{ids(f, {"p1", "p2", "p3"})});
        CHECK(quorums(one, View::full(one), 0, false) ==
              std::vector<ProcSet>{one.universe.full()});
    }
    SUBCASE("matches the literal filter") {
        Rng rng(17);
        for (int k = 0; k < 20; ++k) {
            Pfps g = fuzz::random_pfps(5, rng);
            View v = View::full(g);
            for (int p = 0; p < g.size(); ++p) {
                CHECK(quorums(g, v, p, false) == oracle::quorums_literal(g, v, p));
            }
        }
    }
    SUBCASE("containment guard equals quorum existence") {
        Rng rng(19);
        for (int k = 0; k < 20; ++k) {
            Pfps g = fuzz::random_pfps(4, rng);
            View v = View::full(g);
            for (int p = 0; p < g.size(); ++p) {
                auto all = quorums(g, v, p, false);
                for (std::uint64_t bits = 0; bits < 16; ++bits) {
                    ProcSet s(bits);
                    bool any = false;
                    for (ProcSet q : all) {
                        any = any || q.subset_of(s);
                    }
                    CHECK(contains_quorum(g, v, p, s) == any);
                }
            }
        }
    }
}

TEST_CASE("worst-case and resilient views") {
    const Pfps& f = e4();
    SUBCASE("construction") {
        View v0 = worst_case_view(f, ProcSet{});
        for (int i = 0; i < f.size(); ++i) {
            CHECK(v0.config(i) == f.config(i));
        }
        View v4 = worst_case_view(f, ids(f, {"p4"}));
        CHECK(v4.config(f.universe.index("p4")) == Configuration::empty_config());
        CHECK(v4.config(f.universe.index("p1")) == f.config(f.universe.index("p1")));
        View vall = worst_case_view(f, f.universe.full());
        for (int i = 0; i < f.size(); ++i) {
            CHECK(vall.config(i) == Configuration::empty_config());
        }
    }
    SUBCASE("resilience") {
        CHECK(is_resilient(f, View::full(f), ProcSet{}));
        CHECK(is_resilient(f, View::full(f), ids(f, {"p2"})));
        View lie = View::full(f);
        lie.set(f.universe.index("p2"), Configuration::empty_config());
        CHECK_FALSE(is_resilient(f, lie, ids(f, {"p1"})));
        CHECK(is_resilient(f, lie, ids(f, {"p2"})));
        for (std::uint64_t bits = 0; bits < 16; ++bits) {
            CHECK(is_resilient(f, worst_case_view(f, ProcSet(bits)), ProcSet(bits)));
        }
    }
}

TEST_CASE("blocking sets and the inductive closure") {
    const Pfps& f = e4();
    CHECK(blocks(f.config(f.universe.index("p1")), ids(f, {"p2"})));
    CHECK_FALSE(blocks(f.config(f.universe.index("p2")), ids(f, {"p1"})));
    for (int p = 0; p < f.size(); ++p) {
        CHECK(blocks(f.config(p), f.universe.full()));
    }
    Universe u{{"p1"}};
    Configuration degenerate = normalize_config(u.full(), {u.full()});
    CHECK(blocks(degenerate, ProcSet{}));

    CHECK(blocked_closure(f, ids(f, {"p1", "p4"})) == ids(f, {"p1", "p4"}));
    CHECK(blocked_closure(f, ProcSet{}).empty());
    CHECK(blocked_closure(f, ids(f, {"p2", "p3"})) == f.universe.full());

    Rng rng(23);
    for (int k = 0; k < 30; ++k) {
        Pfps g = fuzz::random_pfps(5, rng);
        ProcSet b(rng.below(32));
        CHECK(blocked_closure(g, b) == oracle::blocked_closure_literal(g, b));
    }
}

TEST_CASE("normalized fail-prone systems are antichains") {
    Rng rng(29);
    for (int k = 0; k < 50; ++k) {
        Pfps g = fuzz::random_pfps(6, rng);
        for (int p = 0; p < g.size(); ++p) {
            const auto& fam = g.config(p).fail_prone;
            for (std::size_t i = 0; i < fam.size(); ++i) {
                CHECK(fam[i].subset_of(g.config(p).trusted));
                for (std::size_t j = 0; j < fam.size(); ++j) {
                    if (i != j) {
                        CHECK_FALSE(fam[i].subset_of(fam[j]));
                    }
                }
            }
        }
    }
}

TEST_CASE("canonical set ordering") {
    Universe u{{"p1", "p2", "p3"}};
    ProcSet a = u.parse_set({"p1", "p2"});
    ProcSet b = u.parse_set({"p2"});
    CHECK(set_lex_less(a, b));
    CHECK_FALSE(set_lex_less(b, a));
    CHECK(set_lex_less(u.parse_set({"p1"}), a)); // prefix first
    CHECK(family_order_less(b, a));               // smaller size first
    std::vector<ProcSet> fam = {a, b, ProcSet{}, a};
    canonicalize_family(fam);
    CHECK(fam == std::vector<ProcSet>{ProcSet{}, b, a});
}
