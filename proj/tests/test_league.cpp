#include <doctest.h>

#include "fixtures.hpp"
#include "quorumlace/league.hpp"
#include "quorumlace/oracle.hpp"
#include "quorumlace/rng.hpp"

using namespace quorumlace;
using quorumlace::testing::disjoint_groups;
using quorumlace::testing::e1;
using quorumlace::testing::e4;
using quorumlace::testing::ids;

TEST_CASE("tolerated_sets enumerates exactly the tolerated family") {
    const Pfps& f = e4();
    auto family = tolerated_sets(f, f.universe.full());
    CHECK(family == std::vector<ProcSet>{ProcSet{}, ids(f, {"p1"}), ids(f, {"p4"}),
                                         ids(f, {"p1", "p4"})});

    // Sets covering the whole candidate are tolerated only vacuously and are
    // reported only on request.
    Pfps one = e1();
    CHECK(tolerated_sets(one, one.universe.full()) == std::vector<ProcSet>{ProcSet{}});
    CHECK(tolerated_sets(one, one.universe.full(), kDefaultLeagueCapacity, true) ==
          std::vector<ProcSet>{ProcSet{}, one.universe.full()});
    CHECK(tolerated_sets(f, f.universe.full(), kDefaultLeagueCapacity, true) ==
          std::vector<ProcSet>{ProcSet{}, ids(f, {"p1"}), ids(f, {"p4"}), ids(f, {"p1", "p4"}),
                               f.universe.full()});

    Rng rng(31);
    for (int k = 0; k < 10; ++k) {
        Pfps g = fuzz::random_pfps(5, rng);
        CHECK(tolerated_sets(g, g.universe.full()) ==
              oracle::tolerated_sets(g, g.universe.full()));
    }
}

TEST_CASE("capacity bound rejects oversized universes") {
    std::vector<std::string> names;
    for (int i = 0; i < 21; ++i) {
        names.push_back("q" + std::string(1, static_cast<char>('a' + i)));
    }
    Universe u{names};
    Pfps f;
    f.universe = u;
    for (int i = 0; i < u.size(); ++i) {
        f.configs.push_back(normalize_config(ProcSet::single(i), {}));
    }
    CHECK_THROWS_AS(tolerated_sets(f, f.universe.full()), CapacityError);
    CHECK_THROWS_AS(is_league(f, f.universe.full()), CapacityError);
    CHECK_NOTHROW(tolerated_sets(f, f.universe.full(), 21));
}

TEST_CASE("minimal inclusive/rooted families") {
    const Pfps& f = e4();
    CHECK(inclusive_rooted_minimal(f, f.universe.index("p1"), ProcSet{}).sets ==
          std::vector<ProcSet>{ids(f, {"p1", "p2", "p3"})});
    CHECK(inclusive_rooted_minimal(f, f.universe.index("p2"), ids(f, {"p1", "p4"})).sets ==
          std::vector<ProcSet>{ids(f, {"p2", "p3"})});
    Pfps one = e1();
    CHECK(inclusive_rooted_minimal(one, 0, ProcSet{}).sets ==
          std::vector<ProcSet>{one.universe.full()});

    SUBCASE("every inclusive/rooted set contains a minimal member") {
        Rng rng(37);
        for (int k = 0; k < 15; ++k) {
            Pfps g = fuzz::random_pfps(5, rng);
            ProcSet t(rng.below(32));
            for (int root = 0; root < g.size(); ++root) {
                auto minimal = inclusive_rooted_minimal(g, root, t).sets;
                CHECK(minimal == oracle::inclusive_rooted_sets(g, root, t, true));
                for (ProcSet s : oracle::inclusive_rooted_sets(g, root, t, false)) {
                    bool covered = false;
                    for (ProcSet m : minimal) {
                        covered = covered || m.subset_of(s);
                    }
                    CHECK(covered);
                }
            }
        }
    }
}

TEST_CASE("league consistency") {
    CHECK(check_consistency(e4(), e4().universe.full()).holds);
    CHECK(check_consistency(e1(), e1().universe.full()).holds);

    const Pfps& d = disjoint_groups();
    auto res = check_consistency(d, d.universe.full());
    REQUIRE_FALSE(res.holds);
    REQUIRE(res.counterexample.has_value());
    CHECK(res.counterexample->tolerated.empty());
    CHECK(res.counterexample->set_i == ids(d, {"p1", "p2"}));
    CHECK(res.counterexample->set_j == ids(d, {"p3", "p4"}));
}

TEST_CASE("league availability") {
    const Pfps& f = e4();
    CHECK(check_availability(f, f.universe.full()).holds);
    auto res = check_availability(f, ids(f, {"p1", "p2"}));
    REQUIRE_FALSE(res.holds);
    REQUIRE(res.counterexample.has_value());
    CHECK(res.counterexample->tolerated.empty());
    CHECK(check_availability(e1(), e1().universe.full()).holds);
}

TEST_CASE("is_league ties the verdicts together") {
    CHECK(is_league(e4(), e4().universe.full()).is_league());
    CHECK_FALSE(is_league(disjoint_groups(), disjoint_groups().universe.full()).is_league());
    CHECK(is_league(e1(), e1().universe.full()).is_league());

    SUBCASE("agrees with the direct view quantification") {
        Rng rng(41);
        for (int k = 0; k < 10; ++k) {
            Pfps g = fuzz::random_pfps(4, rng);
            for (std::uint64_t bits = 0; bits < 16; ++bits) {
                CHECK(is_league(g, ProcSet(bits)).is_league() ==
                      oracle::is_league_direct(g, ProcSet(bits)));
            }
        }
    }
    SUBCASE("verdicts are independent of input presentation order") {
        // Same instance, processes declared in a different order.
        Universe u{{"p1", "p2", "p3", "p4"}};
        Pfps g;
        g.universe = u;
        g.configs.resize(4);
        for (int i : {3, 1, 0, 2}) {
            g.configs[static_cast<std::size_t>(i)] = e4().config(i);
        }
        auto a = is_league(e4(), e4().universe.full());
        auto b = is_league(g, g.universe.full());
        CHECK(a.is_league() == b.is_league());
        CHECK(a.tolerated == b.tolerated);
    }
}

TEST_CASE("the t-masked instance separates the exclusion from plain intersection") {
    const Pfps& f = fuzz::t_masked_inconsistency_instance();
    auto res = check_consistency(f, f.universe.full());
    REQUIRE_FALSE(res.holds);
    REQUIRE(res.counterexample.has_value());
    // The violating pair intersects, but only inside the tolerated set.
    CHECK_FALSE((res.counterexample->set_i & res.counterexample->set_j).empty());
    CHECK((res.counterexample->set_i & res.counterexample->set_j)
              .subset_of(res.counterexample->tolerated));
}

TEST_CASE("union of overlapping leagues") {
    const Pfps& f = e4();
    auto rep = union_preserves_league(f, f.universe.full(), f.universe.full());
    CHECK(rep.hypothesis_holds);
    CHECK(rep.union_is_league);

    const Pfps& d = disjoint_groups();
    auto rep2 = union_preserves_league(d, ids(d, {"p1", "p2"}), ids(d, {"p3", "p4"}));
    CHECK_FALSE(rep2.hypothesis_holds);
    CHECK_FALSE(rep2.union_report.has_value());

    CHECK_THROWS_AS(union_preserves_league(d, d.universe.full(), ids(d, {"p1", "p2"})),
                    ContractError);

    SUBCASE("the union property is never falsified on random overlapping leagues") {
        Rng rng(43);
        int tested = 0;
        for (int k = 0; k < 40 && tested < 12; ++k) {
            Pfps g = fuzz::random_pfps(5, rng);
            std::vector<ProcSet> leagues;
            for (std::uint64_t bits = 1; bits < 32; ++bits) {
                if (is_league(g, ProcSet(bits)).is_league()) {
                    leagues.emplace_back(bits);
                }
            }
            for (std::size_t i = 0; i < leagues.size(); ++i) {
                for (std::size_t j = i + 1; j < leagues.size() && tested < 12; ++j) {
                    if ((leagues[i] & leagues[j]).empty()) {
                        continue;
                    }
                    auto r = union_preserves_league(g, leagues[i], leagues[j]);
                    if (r.hypothesis_holds) {
                        CHECK(r.union_is_league);
                        ++tested;
                    }
                }
            }
        }
    }
}

TEST_CASE("maximal leagues") {
    CHECK(find_maximal_leagues(e4()) == std::vector<ProcSet>{e4().universe.full()});
    const Pfps& d = disjoint_groups();
    CHECK(find_maximal_leagues(d) ==
          std::vector<ProcSet>{ids(d, {"p1", "p2"}), ids(d, {"p3", "p4"})});
    Pfps one = e1();
    CHECK(find_maximal_leagues(one) == std::vector<ProcSet>{one.universe.full()});
}
