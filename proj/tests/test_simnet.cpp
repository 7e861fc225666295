#include <doctest.h>

#include "fixtures.hpp"
#include "quorumlace/json_io.hpp"
#include "quorumlace/simnet.hpp"

using namespace quorumlace;
using quorumlace::testing::e4;
using quorumlace::testing::ids;

namespace {

Scenario broadcast_scenario(std::uint64_t seed) {
    Scenario sc;
    sc.name = "e4-broadcast";
    sc.pfps = e4();
    sc.league = sc.pfps.universe.full();
    sc.protocol = Scenario::Protocol::Broadcast;
    sc.sender = sc.pfps.universe.index("p2");
    sc.value = "v";
    sc.seed = seed;
    return sc;
}

Scenario register_scenario(std::uint64_t seed) {
    Scenario sc;
    sc.name = "e4-register";
    sc.pfps = e4();
    sc.league = sc.pfps.universe.full();
    sc.protocol = Scenario::Protocol::Register;
    sc.writer = sc.pfps.universe.index("p2");
    sc.script = {
        {1, sc.pfps.universe.index("p2"), ScriptEntry::Op::Write, "v1"},
        {400, sc.pfps.universe.index("p3"), ScriptEntry::Op::Read, ""},
    };
    sc.seed = seed;
    return sc;
}

int count_outputs(const Trace& t, const char* event) {
    int n = 0;
    for (const TraceRecord& r : t.records) {
        if (r.kind == TraceRecord::Kind::Output && r.payload.value("event", "") == event) {
            ++n;
        }
    }
    return n;
}

} // namespace

TEST_CASE("honest broadcast reaches every process") {
    Scenario sc = broadcast_scenario(1);
    Trace t = run(sc);
    CHECK_FALSE(t.truncated);
    CHECK(count_outputs(t, "deliver") == 4);
    CheckReport rep = check_broadcast(t, sc);
    CHECK(rep.precondition_ok);
    CHECK(rep.all_passed());
}

TEST_CASE("replay determinism: same scenario, same bytes") {
    for (std::uint64_t seed : {1ull, 7ull, 1234567ull}) {
        Scenario sc = broadcast_scenario(seed);
        std::string a = run(sc).to_jsonl(sc.pfps.universe);
        std::string b = run(sc).to_jsonl(sc.pfps.universe);
        CHECK(a == b);
    }
    Scenario rs = register_scenario(99);
    CHECK(run(rs).to_jsonl(rs.pfps.universe) == run(rs).to_jsonl(rs.pfps.universe));
}

TEST_CASE("different seeds reorder deliveries but keep the outcome") {
    std::string a = run(broadcast_scenario(5)).to_jsonl(e4().universe);
    std::string b = run(broadcast_scenario(6)).to_jsonl(e4().universe);
    CHECK(a != b);
}

TEST_CASE("trace steps are strictly increasing and quiescent runs are fair") {
    Scenario sc = broadcast_scenario(3);
    Trace t = run(sc);
    for (std::size_t i = 1; i < t.records.size(); ++i) {
        CHECK(t.records[i - 1].step < t.records[i].step);
    }
    CHECK(t.expected_cc_deliveries == t.actual_cc_deliveries);
}

TEST_CASE("an empty register script goes quiescent immediately") {
    Scenario sc = register_scenario(1);
    sc.script.clear();
    Trace t = run(sc);
    CHECK_FALSE(t.truncated);
    CHECK(t.records.empty());
    CHECK(check_register(t, sc).all_passed());
}

TEST_CASE("max_steps truncation flags the trace and skips liveness") {
    Scenario sc = broadcast_scenario(1);
    sc.max_steps = 3;
    Trace t = run(sc);
    CHECK(t.truncated);
    CheckReport rep = check_broadcast(t, sc);
    CHECK(rep.precondition_ok);
    for (const PropertyVerdict& v : rep.verdicts) {
        if (v.property == "validity" || v.property == "totality") {
            CHECK_FALSE(v.applicable);
        }
    }
    CHECK(rep.all_passed()); // safety holds on the prefix
}

TEST_CASE("byzantine configuration lies and silence under a tolerated set") {
    Scenario sc = broadcast_scenario(17);
    sc.faulty[sc.pfps.universe.index("p1")] = Behavior::lie_empty();
    sc.faulty[sc.pfps.universe.index("p4")] = Behavior::mute();
    Trace t = run(sc);
    CheckReport rep = check_broadcast(t, sc);
    CHECK(rep.precondition_ok);
    CHECK(rep.all_passed());
    CHECK(count_outputs(t, "deliver") >= 2); // p2 and p3 decide
}

TEST_CASE("an equivocating faulty sender cannot split the league") {
    Scenario sc = broadcast_scenario(23);
    sc.sender = sc.pfps.universe.index("p1");
    ProcSet a = ids(sc.pfps, {"p2"});
    ProcSet b = ids(sc.pfps, {"p3", "p4"});
    sc.faulty[sc.sender] = Behavior::equivocate(a, b, "v", "w");
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        sc.seed = seed;
        CheckReport rep = check_broadcast(run(sc), sc);
        CHECK(rep.precondition_ok);
        CHECK(rep.all_passed());
    }
}

TEST_CASE("crash behavior stops a process mid-run") {
    Scenario sc = broadcast_scenario(29);
    sc.faulty[sc.pfps.universe.index("p4")] = Behavior::crash(20);
    CheckReport rep = check_broadcast(run(sc), sc);
    CHECK(rep.precondition_ok);
    CHECK(rep.all_passed());
}

TEST_CASE("adversarially delayed targets still terminate") {
    Scenario sc = broadcast_scenario(31);
    sc.adversarial_target = sc.pfps.universe.index("p3");
    Trace t = run(sc);
    CHECK_FALSE(t.truncated);
    CHECK(check_broadcast(t, sc).all_passed());
}

TEST_CASE("untolerated faulty sets are refused, not failed") {
    Scenario sc = broadcast_scenario(1);
    sc.faulty[sc.pfps.universe.index("p2")] = Behavior::mute();
    Trace t = run(sc);
    CheckReport rep = check_broadcast(t, sc);
    CHECK_FALSE(rep.precondition_ok);
    CHECK(rep.verdicts.empty());
}

TEST_CASE("the consistency checker rejects a synthetic split decision") {
    Scenario sc = broadcast_scenario(1);
    Trace t;
    TraceRecord r1;
    r1.step = 0;
    r1.kind = TraceRecord::Kind::Output;
    r1.process = sc.pfps.universe.index("p2");
    r1.payload = {{"event", "deliver"}, {"value", "v"}};
    TraceRecord r2 = r1;
    r2.step = 1;
    r2.process = sc.pfps.universe.index("p3");
    r2.payload = {{"event", "deliver"}, {"value", "w"}};
    t.records = {r1, r2};
    t.truncated = true; // keep the liveness clauses out of the way
    CheckReport rep = check_broadcast(t, sc);
    bool consistency_failed = false;
    for (const PropertyVerdict& v : rep.verdicts) {
        if (v.property == "consistency") {
            consistency_failed = !v.passed;
        }
    }
    CHECK(consistency_failed);
}

TEST_CASE("a read with no prior write returns the initial value") {
    Scenario sc = register_scenario(21);
    sc.script = {{1, sc.pfps.universe.index("p3"), ScriptEntry::Op::Read, ""}};
    Trace t = run(sc);
    CheckReport rep = check_register(t, sc);
    CHECK(rep.precondition_ok);
    CHECK(rep.all_passed());
    bool saw = false;
    for (const TraceRecord& r : t.records) {
        if (r.kind == TraceRecord::Kind::Output && r.payload.value("event", "") == "read-return") {
            saw = true;
            CHECK(r.payload.at("value").get<std::string>().empty());
        }
    }
    CHECK(saw);
}

TEST_CASE("register write then read returns the written value") {
    Scenario sc = register_scenario(7);
    Trace t = run(sc);
    CHECK_FALSE(t.truncated);
    CheckReport rep = check_register(t, sc);
    CHECK(rep.precondition_ok);
    CHECK(rep.all_passed());
    bool saw_read = false;
    for (const TraceRecord& r : t.records) {
        if (r.kind == TraceRecord::Kind::Output && r.payload.value("event", "") == "read-return") {
            saw_read = true;
            CHECK(r.payload.at("value").get<std::string>() == "v1");
        }
    }
    CHECK(saw_read);
}

TEST_CASE("a read overlapping a write may return either value") {
    Scenario sc = register_scenario(11);
    sc.script = {
        {1, sc.pfps.universe.index("p2"), ScriptEntry::Op::Write, "v1"},
        {300, sc.pfps.universe.index("p2"), ScriptEntry::Op::Write, "v2"},
        {300, sc.pfps.universe.index("p3"), ScriptEntry::Op::Read, ""},
    };
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        sc.seed = seed;
        Trace t = run(sc);
        CheckReport rep = check_register(t, sc);
        CHECK(rep.precondition_ok);
        CHECK(rep.all_passed());
    }
}

TEST_CASE("register runs tolerate silent byzantine replicas") {
    Scenario sc = register_scenario(13);
    sc.faulty[sc.pfps.universe.index("p1")] = Behavior::mute();
    sc.faulty[sc.pfps.universe.index("p4")] = Behavior::mute();
    Trace t = run(sc);
    CheckReport rep = check_register(t, sc);
    CHECK(rep.precondition_ok);
    CHECK(rep.all_passed());
}

TEST_CASE("a bridge process blocked by conflicting values raises the star message") {
    Scenario sc;
    sc.name = "bridge";
    sc.pfps = quorumlace::testing::bridge_instance();
    const Universe& u = sc.pfps.universe;
    sc.league = u.parse_set({"p3", "p4"});
    sc.protocol = Scenario::Protocol::Broadcast;
    sc.sender = u.index("p1");
    sc.value = "v";
    sc.faulty[sc.sender] =
        Behavior::equivocate(u.parse_set({"p2"}), u.parse_set({"p3", "p4"}), "v", "w");
    REQUIRE(is_league(sc.pfps, sc.league).is_league());
    REQUIRE(tolerated_by(sc.pfps, sc.league, sc.faulty_set()));

    bool any_seen = false;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        sc.seed = seed;
        Trace t = run(sc);
        CheckReport rep = check_broadcast(t, sc);
        CHECK(rep.precondition_ok);
        CHECK(rep.all_passed());
        for (const TraceRecord& r : t.records) {
            if (r.kind == TraceRecord::Kind::Send &&
                r.payload.at("message").at("kind").get<std::string>() == "any") {
                any_seen = true;
                CHECK(u.name(r.process) == "p2");
            }
        }
    }
    CHECK(any_seen);

    SUBCASE("disabling the clause is caught by the conformance verdict") {
        sc.disable_any = true;
        bool caught = false;
        for (std::uint64_t seed = 0; seed < 40 && !caught; ++seed) {
            sc.seed = seed;
            CheckReport rep = check_broadcast(run(sc), sc);
            for (const PropertyVerdict& v : rep.verdicts) {
                if (v.property == "any-conformance" && v.applicable && !v.passed) {
                    caught = true;
                }
            }
        }
        CHECK(caught);
    }
}

TEST_CASE("sweep aggregates and skips untolerated assignments") {
    Scenario base = broadcast_scenario(0);
    std::vector<FaultyAssignment> grid;
    grid.push_back({"honest", {}, false});
    grid.push_back({"p1-lie", {{base.pfps.universe.index("p1"), Behavior::lie_empty()}}, false});
    grid.push_back({"p2-mute", {{base.pfps.universe.index("p2"), Behavior::mute()}}, true});
    SweepReport rep = sweep(base, grid, {1, 2, 3});
    CHECK(rep.runs == 6);
    CHECK(rep.passed == 6);
    CHECK(rep.skipped_untolerated == 1);
    CHECK(rep.clean());
}

TEST_CASE("protocols hold on randomized leagues, not just the fixtures") {
    Rng rng(20250811);
    int exercised = 0;
    for (int k = 0; k < 30 && exercised < 12; ++k) {
        Pfps f = fuzz::random_pfps(5, rng);
        // Find a usable league with a non-trivial tolerated set.
        ProcSet league;
        ProcSet tolerated;
        for (std::uint64_t bits = 31; bits > 0; --bits) {
            ProcSet l(bits);
            if (!is_league(f, l).is_league()) {
                continue;
            }
            auto ts = tolerated_sets(f, l);
            league = l;
            tolerated = ts.back(); // largest in canonical order
            break;
        }
        if (league.empty() || (league - tolerated).empty()) {
            continue;
        }
        ++exercised;
        int leader = (league - tolerated).lowest();

        std::map<int, Behavior> behaviors;
        bool flip = false;
        for (int i = 0; i < f.size(); ++i) {
            if (tolerated.has(i)) {
                behaviors[i] = flip ? Behavior::mute() : Behavior::lie_empty();
                flip = !flip;
            }
        }

        Scenario bc;
        bc.name = "random-league-broadcast";
        bc.pfps = f;
        bc.league = league;
        bc.protocol = Scenario::Protocol::Broadcast;
        bc.sender = leader;
        bc.value = "v";
        bc.faulty = behaviors;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            bc.seed = seed;
            CheckReport rep = check_broadcast(run(bc), bc);
            REQUIRE(rep.precondition_ok);
            CHECK(rep.all_passed());
        }

        Scenario reg;
        reg.name = "random-league-register";
        reg.pfps = f;
        reg.league = league;
        reg.protocol = Scenario::Protocol::Register;
        reg.writer = leader;
        reg.script = {{1, leader, ScriptEntry::Op::Write, "x"},
                      {600, leader, ScriptEntry::Op::Read, ""}};
        reg.faulty = behaviors;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            reg.seed = seed;
            CheckReport rep = check_register(run(reg), reg);
            REQUIRE(rep.precondition_ok);
            CHECK(rep.all_passed());
        }
    }
    CHECK(exercised >= 5);
}

TEST_CASE("a deferred invocation behind a stuck operation hits the bound") {
    // A mute writer never completes its write, so the second invocation
    // keeps deferring; the run must truncate rather than spin.
    Scenario sc = register_scenario(5);
    sc.script = {
        {1, sc.pfps.universe.index("p2"), ScriptEntry::Op::Write, "v1"},
        {50, sc.pfps.universe.index("p2"), ScriptEntry::Op::Write, "v2"},
    };
    sc.faulty[sc.pfps.universe.index("p2")] = Behavior::mute();
    sc.max_steps = 2000;
    Trace t = run(sc);
    CHECK(t.truncated);
}

TEST_CASE("scenario validation") {
    Scenario sc = broadcast_scenario(1);
    sc.faulty[sc.pfps.universe.index("p3")] =
        Behavior::equivocate(ProcSet{}, ProcSet{}, "a", "b");
    CHECK_THROWS_AS(sc.validate(), InputError);

    Scenario rs = register_scenario(1);
    rs.script.push_back({5, rs.pfps.universe.index("p3"), ScriptEntry::Op::Write, "x"});
    CHECK_THROWS_AS(rs.validate(), InputError);
}
