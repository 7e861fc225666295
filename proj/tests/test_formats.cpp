#include <doctest.h>

#include "fixtures.hpp"
#include "quorumlace/json_io.hpp"

using namespace quorumlace;
using quorumlace::testing::e4;

namespace {

const char* kE4Json = R"({
  "format": 1,
  "processes": {
    "p1": {"trusted": ["p1","p2","p3","p4"], "fail_prone": [["p3","p4"]]},
    "p2": {"trusted": ["p1","p2","p3","p4"], "fail_prone": [["p1","p4"]]},
    "p3": {"trusted": ["p1","p2","p3","p4"], "fail_prone": [["p1","p4"]]},
    "p4": {"trusted": ["p1","p2","p3","p4"], "fail_prone": [["p1","p2"]]}
  },
  "league": ["p1","p2","p3","p4"]
})";

} // namespace

TEST_CASE("config files parse into the expected system") {
    ConfigFile cf = parse_config_file(kE4Json);
    REQUIRE(cf.pfps.size() == 4);
    const Pfps& expected = e4();
    for (int i = 0; i < 4; ++i) {
        CHECK(cf.pfps.config(i) == expected.config(i));
    }
    REQUIRE(cf.league.has_value());
    CHECK(*cf.league == cf.pfps.universe.full());
}

TEST_CASE("canonical rendering is a fixpoint and order-insensitive") {
    ConfigFile cf = parse_config_file(kE4Json);
    std::string once = render_config_file(cf);
    CHECK(render_config_file(parse_config_file(once)) == once);

    // The same system with keys and arrays shuffled renders identically.
    const char* shuffled = R"({
      "processes": {
        "p4": {"trusted": ["p4","p3","p2","p1"], "fail_prone": [["p2","p1"]]},
        "p2": {"trusted": ["p2","p1","p4","p3"], "fail_prone": [["p4","p1"]]},
        "p1": {"trusted": ["p1","p2","p3","p4"], "fail_prone": [["p4","p3"]]},
        "p3": {"trusted": ["p3","p4","p1","p2"], "fail_prone": [["p1","p4"]]}
      },
      "league": ["p4","p1","p3","p2"]
    })";
    CHECK(render_config_file(parse_config_file(shuffled)) == once);
}

TEST_CASE("referencing an unconfigured process is an error") {
    const char* bad = R"({"processes": {"p1": {"trusted": ["p1","p9"], "fail_prone": []}}})";
    CHECK_THROWS_WITH_AS(parse_config_file(bad),
                         "process 'p9' is referenced but has no configuration entry", InputError);
    CHECK_THROWS_AS(parse_config_file("{nonsense"), InputError);
    CHECK_THROWS_AS(parse_config_file(R"({"format": 2, "processes": {}})"), InputError);
}

TEST_CASE("scenario files round-trip") {
    Scenario sc;
    sc.name = "round-trip";
    sc.pfps = e4();
    sc.league = sc.pfps.universe.full();
    sc.protocol = Scenario::Protocol::Register;
    sc.writer = sc.pfps.universe.index("p2");
    sc.script = {{1, sc.pfps.universe.index("p2"), ScriptEntry::Op::Write, "v"},
                 {50, sc.pfps.universe.index("p3"), ScriptEntry::Op::Read, ""}};
    sc.faulty[sc.pfps.universe.index("p1")] = Behavior::crash(40);
    sc.seed = 99;
    sc.max_steps = 5000;

    std::string text = render_scenario_file(sc);
    Scenario back = parse_scenario_file(text);
    CHECK(back.name == sc.name);
    CHECK(back.writer == sc.writer);
    CHECK(back.script.size() == 2);
    CHECK(back.faulty.size() == 1);
    CHECK(back.seed == 99);
    CHECK(render_scenario_file(back) == text);
}

TEST_CASE("behavior encoding covers every variant") {
    const Universe& u = e4().universe;
    std::vector<Behavior> all = {
        Behavior::honest(),
        Behavior::crash(17),
        Behavior::mute(),
        Behavior::lie_empty(),
        Behavior::lie(normalize_config(u.parse_set({"p1"}), {})),
        Behavior::worst_case(),
        Behavior::equivocate(u.parse_set({"p1"}), u.parse_set({"p3", "p4"}), "a", "b"),
    };
    for (const Behavior& b : all) {
        Behavior back = behavior_from_json(behavior_to_json(b, u), u);
        CHECK(back.type == b.type);
        CHECK(back.crash_step == b.crash_step);
        CHECK(back.partition_a == b.partition_a);
        CHECK(back.value_b == b.value_b);
        CHECK(back.advertised.has_value() == b.advertised.has_value());
    }
}

TEST_CASE("faulty specs parse into behavior maps") {
    const Pfps& f = e4();
    auto m = parse_faulty_spec("p1:lie-empty,p4:mute", f, "v");
    REQUIRE(m.size() == 2);
    CHECK(m.at(f.universe.index("p1")).type == Behavior::Type::LieConfig);
    CHECK(m.at(f.universe.index("p4")).type == Behavior::Type::Mute);

    auto eq = parse_faulty_spec("p2:equivocate", f, "v");
    const Behavior& b = eq.at(f.universe.index("p2"));
    CHECK(b.type == Behavior::Type::Equivocate);
    CHECK((b.partition_a | b.partition_b) == (f.universe.full() - f.universe.parse_set({"p2"})));
    CHECK(b.value_a == "v");
    CHECK(b.value_b == "v'");

    CHECK(parse_faulty_spec("p3:crash:123", f, "v").at(f.universe.index("p3")).crash_step == 123);
    CHECK_THROWS_AS(parse_faulty_spec("p1", f, "v"), InputError);
    CHECK_THROWS_AS(parse_faulty_spec("p1:jam", f, "v"), InputError);
    CHECK_THROWS_AS(parse_faulty_spec("p9:mute", f, "v"), InputError);
}

TEST_CASE("model files parse per discriminator") {
    ModelFile sym = parse_model_file(R"({
      "model": "symmetric", "processes": ["p1","p2","p3"],
      "fail_prone": [["p1"],["p2"]]
    })");
    CHECK(sym.kind == ModelFile::Kind::Symmetric);
    CHECK(sym.symmetric.fail_prone.size() == 2);

    ModelFile asym = parse_model_file(R"({
      "model": "asymmetric", "processes": ["p1","p2"],
      "fail_prone": {"p1": [["p2"]], "p2": [[]]}
    })");
    CHECK(asym.kind == ModelFile::Kind::Asymmetric);

    ModelFile fbas = parse_model_file(R"({
      "model": "fbas", "processes": ["p1","p2"],
      "known": {"p1": ["p1","p2"], "p2": ["p1","p2"]},
      "slices": {"p1": [["p1","p2"]], "p2": [["p2"]]}
    })");
    CHECK(fbas.kind == ModelFile::Kind::Fbas);

    ModelFile pbqs = parse_model_file(R"({
      "model": "pbqs", "processes": ["p1"],
      "quorums": {"p1": [["p1"]]}
    })");
    CHECK(pbqs.kind == ModelFile::Kind::Pbqs);
    CHECK(pbqs.pbqs.valid());

    ModelFile pf = parse_model_file(R"({
      "model": "pfps",
      "processes": {"p1": {"trusted": ["p1"], "fail_prone": []}}
    })");
    CHECK(pf.kind == ModelFile::Kind::PfpsModel);

    CHECK_THROWS_AS(parse_model_file(R"({"model": "martian", "processes": []})"), InputError);
}

TEST_CASE("message encoding has a fixed field order") {
    const Pfps& f = e4();
    ProtocolMessage m;
    m.kind = MsgKind::Write;
    m.sender = f.universe.index("p2");
    m.timestamp = 3;
    m.value = "v";
    m.signature = "sig:p2:00";
    m.config = f.config(f.universe.index("p2"));
    std::string dumped = message_to_json(m, f.universe).dump();
    CHECK(dumped ==
          R"({"kind":"write","sender":"p2","ts":3,"value":"v","sig":"sig:p2:00",)"
          R"("config":{"trusted":["p1","p2","p3","p4"],"fail_prone":[["p1","p4"]]}})");
}
