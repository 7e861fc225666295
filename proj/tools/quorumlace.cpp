// Command-line front end: league analysis, protocol simulation, model
// comparisons, and oracle-backed fuzzing over permissionless fail-prone
// systems.

#include <CLI11.hpp>

#include "quorumlace/bridges.hpp"
#include "quorumlace/fuzz.hpp"
#include "quorumlace/json_io.hpp"
#include "quorumlace/league.hpp"
#include "quorumlace/oracle.hpp"
#include "quorumlace/simnet.hpp"

#include <cstdlib>
#include <iostream>

using namespace quorumlace;

namespace {

int capacity_from_env(int fallback) {
    const char* env = std::getenv("QUORUMLACE_CAPACITY");
    if (env == nullptr || *env == '\0') {
        return fallback;
    }
    return std::atoi(env);
}

void emit(const ordered_json& report, bool as_json, const std::string& text) {
    if (as_json) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

std::string format_family(const Universe& u, const std::vector<ProcSet>& family) {
    std::string out = "{";
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (i) {
            out += ", ";
        }
        out += u.set_to_string(family[i]);
    }
    return out + "}";
}

std::vector<ScriptEntry> parse_script(const std::string& text, const Universe& u) {
    // "p2:write:v1@1,p3:read@400"
    std::vector<ScriptEntry> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        ScriptEntry e;
        std::string body = item;
        auto at = body.rfind('@');
        if (at != std::string::npos) {
            e.at_step = std::stoull(body.substr(at + 1));
            body = body.substr(0, at);
        } else {
            e.at_step = 1;
        }
        auto c1 = body.find(':');
        if (c1 == std::string::npos) {
            throw InputError("bad script item '" + item + "' (want <id>:<op>[:v][@step])");
        }
        e.process = u.index(body.substr(0, c1));
        std::string rest = body.substr(c1 + 1);
        auto c2 = rest.find(':');
        std::string op = c2 == std::string::npos ? rest : rest.substr(0, c2);
        if (op == "write") {
            e.op = ScriptEntry::Op::Write;
            if (c2 == std::string::npos) {
                throw InputError("write needs a value in '" + item + "'");
            }
            e.value = rest.substr(c2 + 1);
        } else if (op == "read") {
            e.op = ScriptEntry::Op::Read;
        } else {
            throw InputError("unknown script op '" + op + "'");
        }
        out.push_back(e);
    }
    return out;
}

int cmd_analyze(const std::string& config_path, const std::string& league_arg,
                const std::vector<std::string>& show, bool include_all, int capacity,
                bool as_json) {
    ConfigFile cf = load_config_file(config_path);
    const Pfps& f = cf.pfps;
    const Universe& u = f.universe;
    ordered_json report;
    report["format"] = 1;
    report["command"] = "analyze";
    std::string text;
    bool ok = true;

    auto want = [&](const char* what) {
        return std::find(show.begin(), show.end(), what) != show.end();
    };
    if (want("slices")) {
        ordered_json js;
        for (int p = 0; p < f.size(); ++p) {
            js[u.name(p)] = family_to_json(f.config(p).slices(), u);
            text += "slices(" + u.name(p) + ") = " + format_family(u, f.config(p).slices()) + "\n";
            if (f.config(p).degenerate()) {
                text += "  warning: " + u.name(p) +
                        " has an empty slice (degenerate configuration)\n";
            }
        }
        report["slices"] = std::move(js);
    }
    if (want("survivors")) {
        ordered_json js;
        for (int p = 0; p < f.size(); ++p) {
            auto fam = survivor_sets(f, p, include_all);
            js[u.name(p)] = family_to_json(fam, u);
            text += "survivors(" + u.name(p) + ") = " + format_family(u, fam) + "\n";
        }
        report["survivors"] = std::move(js);
    }
    if (want("quorums")) {
        View full = View::full(f);
        ordered_json js;
        for (int p = 0; p < f.size(); ++p) {
            auto fam = quorums(f, full, p, !include_all);
            js[u.name(p)] = family_to_json(fam, u);
            text += "quorums(" + u.name(p) + ") = " + format_family(u, fam) + "\n";
        }
        report["quorums"] = std::move(js);
    }

    std::optional<ProcSet> league;
    bool all_maximal = league_arg == "all-maximal";
    if (!league_arg.empty() && !all_maximal) {
        std::vector<std::string> ids;
        std::stringstream ss(league_arg);
        std::string id;
        while (std::getline(ss, id, ',')) {
            ids.push_back(id);
        }
        league = u.parse_set(ids);
    } else if (league_arg.empty() && cf.league) {
        league = cf.league;
    }

    if (want("tolerated")) {
        ProcSet l = league.value_or(u.full());
        auto fam = tolerated_sets(f, l, capacity);
        report["tolerated"] = family_to_json(fam, u);
        text += "tolerated(" + u.set_to_string(l) + ") = " + format_family(u, fam) + "\n";
    }
    if (all_maximal) {
        auto leagues = find_maximal_leagues(f, capacity);
        report["maximal_leagues"] = family_to_json(leagues, u);
        text += "maximal leagues: " + format_family(u, leagues) + "\n";
    } else if (league) {
        LeagueReport lr = is_league(f, *league, capacity);
        ok = lr.is_league();
        ordered_json jl;
        jl["candidate"] = set_to_json(*league, u);
        jl["tolerated"] = family_to_json(lr.tolerated, u);
        jl["consistency"] = lr.consistency.holds;
        jl["availability"] = lr.availability.holds;
        jl["is_league"] = lr.is_league();
        text += "league " + u.set_to_string(*league) + ": " +
                (lr.is_league() ? "yes" : "NO") + "\n";
        text += "  tolerated = " + format_family(u, lr.tolerated) + "\n";
        if (lr.consistency.counterexample) {
            const auto& cx = *lr.consistency.counterexample;
            jl["consistency_counterexample"] = {
                {"tolerated", set_to_json(cx.tolerated, u)},
                {"root_i", u.name(cx.root_i)},
                {"root_j", u.name(cx.root_j)},
                {"set_i", set_to_json(cx.set_i, u)},
                {"set_j", set_to_json(cx.set_j, u)},
            };
            text += "  consistency fails: T=" + u.set_to_string(cx.tolerated) + ", I=" +
                    u.set_to_string(cx.set_i) + " (rooted " + u.name(cx.root_i) + "), I'=" +
                    u.set_to_string(cx.set_j) + " (rooted " + u.name(cx.root_j) + ")\n";
        }
        if (lr.availability.counterexample) {
            const auto& cx = *lr.availability.counterexample;
            jl["availability_counterexample"] = {
                {"tolerated", set_to_json(cx.tolerated, u)},
                {"process", u.name(cx.process)},
            };
            text += "  availability fails: T=" + u.set_to_string(cx.tolerated) + ", process " +
                    u.name(cx.process) + "\n";
        }
        report["league"] = std::move(jl);
    }
    report["ok"] = ok;
    emit(report, as_json, text);
    return ok ? 0 : 1;
}

int cmd_simulate(const std::string& config_path, const std::string& scenario_path,
                 const std::string& protocol, const std::string& sender,
                 const std::string& value, const std::string& writer, const std::string& script,
                 const std::string& faulty_spec, std::uint64_t seed, std::uint64_t sweep_count,
                 const std::string& trace_path, const std::string& scenario_out,
                 std::uint64_t max_steps, const std::string& adversarial, bool disable_any,
                 bool force, bool as_json) {
    Scenario sc;
    if (!scenario_path.empty()) {
        sc = load_scenario_file(scenario_path);
    } else {
        ConfigFile cf = load_config_file(config_path);
        sc.pfps = cf.pfps;
        sc.league = cf.league.value_or(sc.pfps.universe.full());
        sc.name = config_path;
        if (protocol == "broadcast") {
            sc.protocol = Scenario::Protocol::Broadcast;
            sc.sender = sc.pfps.universe.index(sender);
            sc.value = value.empty() ? "v" : value;
        } else if (protocol == "register") {
            sc.protocol = Scenario::Protocol::Register;
            sc.writer = sc.pfps.universe.index(writer);
            sc.script = parse_script(script, sc.pfps.universe);
        } else {
            throw InputError("unknown --protocol '" + protocol + "'");
        }
        sc.faulty = parse_faulty_spec(faulty_spec, sc.pfps, sc.value.empty() ? "v" : sc.value);
        sc.seed = seed;
        sc.max_steps = max_steps;
        if (!adversarial.empty()) {
            sc.adversarial_target = sc.pfps.universe.index(adversarial);
        }
        sc.disable_any = disable_any;
    }
    sc.validate();
    if (!scenario_out.empty()) {
        write_file(scenario_out, render_scenario_file(sc));
    }

    ordered_json report;
    report["format"] = 1;
    report["command"] = "simulate";
    std::string text;

    bool tolerated = tolerated_by(sc.pfps, sc.league, sc.faulty_set());
    if (!tolerated && !force) {
        report["skipped"] = true;
        report["reason"] = "faulty set not tolerated by the league (use --force to run anyway)";
        report["ok"] = true;
        emit(report, as_json,
             "skipped: faulty set " + sc.pfps.universe.set_to_string(sc.faulty_set()) +
                 " is not tolerated by the league (use --force to run anyway)\n");
        return 0;
    }

    if (sweep_count > 0) {
        std::vector<std::uint64_t> seeds;
        for (std::uint64_t s = 0; s < sweep_count; ++s) {
            seeds.push_back(s);
        }
        SweepReport rep = sweep(sc, {{sc.name, sc.faulty, !tolerated}}, seeds);
        report["sweep"] = sweep_report_to_json(rep);
        report["ok"] = rep.clean();
        text += "sweep: " + std::to_string(rep.runs) + " runs, " + std::to_string(rep.passed) +
                " passed, " + std::to_string(rep.violations.size()) + " violations\n";
        for (const auto& v : rep.violations) {
            text += "  violation [" + v.property + "] seed=" + std::to_string(v.seed) + ": " +
                    v.detail + "\n";
        }
        emit(report, as_json, text);
        return rep.clean() ? 0 : 1;
    }

    Trace trace = run(sc);
    if (!trace_path.empty()) {
        write_file(trace_path, trace.to_jsonl(sc.pfps.universe));
    }
    CheckReport check = sc.protocol == Scenario::Protocol::Broadcast
                            ? check_broadcast(trace, sc)
                            : check_register(trace, sc);
    report["check"] = check_report_to_json(check);
    bool ok = !check.precondition_ok || check.all_passed();
    if (check.precondition_ok) {
        ok = check.all_passed();
    }
    report["ok"] = ok;
    text += "run: " + std::to_string(trace.records.size()) + " events" +
            (trace.truncated ? " (truncated)" : "") + "\n";
    if (!check.precondition_ok) {
        text += "checker skipped: " + check.precondition_detail + "\n";
    }
    for (const PropertyVerdict& v : check.verdicts) {
        text += "  " + v.property + ": " +
                (!v.applicable ? "skipped" : (v.passed ? "pass" : "FAIL")) +
                (v.detail.empty() ? "" : " (" + v.detail + ")") + "\n";
    }
    emit(report, as_json, text);
    return ok ? 0 : 1;
}

int cmd_compare(const std::string& model_path, const std::string& check,
                const std::string& set_arg, const std::string& faulty_arg, int capacity,
                bool as_json) {
    ModelFile model = load_model_file(model_path);
    ordered_json report;
    report["format"] = 1;
    report["command"] = "compare";
    report["check"] = check;
    std::string text;
    bool ok = false;

    auto parse_ids = [](const std::string& arg, const Universe& u) {
        std::vector<std::string> ids;
        std::stringstream ss(arg);
        std::string id;
        while (std::getline(ss, id, ',')) {
            ids.push_back(id);
        }
        return u.parse_set(ids);
    };

    if (check == "q3" || check == "thm1") {
        if (model.kind != ModelFile::Kind::Symmetric) {
            throw InputError("--check " + check + " needs a symmetric model file");
        }
        const Universe& u = model.symmetric.universe;
        if (check == "q3") {
            Q3Result r = q3_check(model.symmetric);
            ok = r.holds;
            report["holds"] = r.holds;
            text += std::string("q3: ") + (r.holds ? "holds" : "violated");
            if (!r.holds) {
                report["witness"] = {set_to_json(r.witness_f1, u), set_to_json(r.witness_f2, u),
                                     set_to_json(r.witness_f3, u)};
                text += " by " + u.set_to_string(r.witness_f1) + " ∪ " +
                        u.set_to_string(r.witness_f2) + " ∪ " + u.set_to_string(r.witness_f3);
            }
            text += "\n";
        } else {
            ClassicEquivalenceResult r = classic_equivalence_harness(model.symmetric, capacity);
            ok = r.agree;
            report["q3"] = r.q3;
            report["league"] = r.league;
            report["agree"] = r.agree;
            text += "thm1: q3=" + std::to_string(r.q3) + " league=" + std::to_string(r.league) +
                    " agreement=" + (r.agree ? "true" : "FALSE") + "\n";
        }
    } else if (check == "b3" || check == "thm2" || check == "guild") {
        if (model.kind != ModelFile::Kind::Asymmetric) {
            throw InputError("--check " + check + " needs an asymmetric model file");
        }
        const Universe& u = model.asymmetric.universe;
        if (check == "b3") {
            B3Result r = b3_check(model.asymmetric);
            ok = r.holds;
            report["holds"] = r.holds;
            text += std::string("b3: ") + (r.holds ? "holds" : "violated");
            if (!r.holds) {
                report["witness"] = {
                    {"i", u.name(r.witness_i)},
                    {"j", u.name(r.witness_j)},
                    {"f_i", set_to_json(r.witness_fi, u)},
                    {"f_j", set_to_json(r.witness_fj, u)},
                    {"f_ij", set_to_json(r.witness_fij, u)},
                };
                text += ": " + u.set_to_string(r.witness_fi) + " ∪ " +
                        u.set_to_string(r.witness_fj) + " ∪ " + u.set_to_string(r.witness_fij) +
                        " covers the universe";
            }
            text += "\n";
        } else if (check == "thm2") {
            AsymmetricLeagueResult r = asymmetric_league_harness(model.asymmetric, capacity);
            ok = r.holds;
            report["b3"] = r.b3;
            report["tolerates_some"] = r.tolerates_some;
            report["league"] = r.league;
            report["holds"] = r.holds;
            report["device_ok"] = r.device_ok;
            text += "thm2: b3=" + std::to_string(r.b3) +
                    " tolerates-some=" + std::to_string(r.tolerates_some) +
                    " league=" + std::to_string(r.league) +
                    " implication=" + (r.holds ? "holds" : "FAILS") + "\n";
        } else {
            if (faulty_arg.empty()) {
                throw InputError("--check guild needs --faulty");
            }
            ProcSet faulty = parse_ids(faulty_arg, u);
            GuildReport r = guild_and_wise(model.asymmetric, faulty);
            report["wise"] = set_to_json(r.wise, u);
            report["naive"] = set_to_json(r.naive, u);
            report["maximal_guild"] = set_to_json(r.maximal_guild, u);
            report["guilds"] = family_to_json(r.guilds, u);
            Pfps g = g_embed(model.asymmetric);
            ProcSet tolerating;
            for (int i = 0; i < g.size(); ++i) {
                if (!faulty.has(i) && tolerates(g, i, faulty)) {
                    tolerating.add(i);
                }
            }
            bool guild_is_tolerating = r.maximal_guild == tolerating;
            bool guild_is_league =
                r.maximal_guild.empty() || is_league(g, r.maximal_guild, capacity).is_league();
            ok = guild_is_tolerating && guild_is_league;
            report["guild_equals_tolerating_set"] = guild_is_tolerating;
            report["guild_is_league"] = guild_is_league;
            text += "wise=" + u.set_to_string(r.wise) + " naive=" + u.set_to_string(r.naive) +
                    " guild=" + u.set_to_string(r.maximal_guild) + "\n";
            text += std::string("guild = tolerating set: ") +
                    (guild_is_tolerating ? "yes" : "NO") + "; guild is league: " +
                    (guild_is_league ? "yes" : "NO") + "\n";
        }
    } else if (check == "intact" || check == "cluster") {
        Pfps f;
        if (model.kind == ModelFile::Kind::Fbas) {
            f = fbas_derive(model.fbas);
        } else if (model.kind == ModelFile::Kind::PfpsModel) {
            f = model.pfps;
        } else {
            throw InputError("--check " + check + " needs an fbas or pfps model file");
        }
        const Universe& u = f.universe;
        ProcSet faulty = faulty_arg.empty() ? ProcSet{} : parse_ids(faulty_arg, u);
        ProcSet candidate = set_arg.empty() ? (u.full() - faulty) : parse_ids(set_arg, u);
        if (check == "intact") {
            IntactResult r = intact_check(f, candidate, faulty);
            ok = r.intact;
            report["intact"] = r.intact;
            report["degenerate"] = r.degenerate;
            if (r.witness) {
                report["witness"] = {
                    {"p", u.name(r.witness->p)},
                    {"q", u.name(r.witness->q)},
                    {"quorum_p", set_to_json(r.witness->quorum_p, u)},
                    {"quorum_q", set_to_json(r.witness->quorum_q, u)},
                };
            }
            text += "intact(" + u.set_to_string(candidate) + "): " + (r.intact ? "yes" : "NO") +
                    "\n";
        } else {
            ClusterResult r = consensus_cluster_check(f, candidate, faulty);
            ok = r.cluster;
            report["cluster"] = r.cluster;
            if (r.witness) {
                report["witness"] = {
                    {"p", u.name(r.witness->p)},
                    {"q", u.name(r.witness->q)},
                    {"quorum_p", set_to_json(r.witness->quorum_p, u)},
                    {"quorum_q", set_to_json(r.witness->quorum_q, u)},
                };
            }
            if (r.unavailable_member) {
                report["unavailable_member"] = u.name(*r.unavailable_member);
            }
            text += "consensus-cluster(" + u.set_to_string(candidate) + "): " +
                    (r.cluster ? "yes" : "NO") + "\n";
        }
    } else {
        throw InputError("unknown --check '" + check + "'");
    }
    report["ok"] = ok;
    emit(report, as_json, text);
    return ok ? 0 : 1;
}

int cmd_fuzz(int processes, int instances, std::uint64_t seed,
             const std::vector<std::string>& properties, int oracle_bound,
             const std::string& counterexample_out, bool as_json) {
    if (processes > oracle_bound) {
        throw InputError("--processes " + std::to_string(processes) +
                         " exceeds the oracle bound " + std::to_string(oracle_bound) +
                         "; raise --oracle-bound knowing the cost is exponential");
    }
    fuzz::FuzzOptions opts;
    opts.processes = processes;
    opts.instances = instances;
    opts.seed = seed;
    opts.properties = properties;
    fuzz::FuzzReport rep = fuzz::run_fuzz(opts);

    ordered_json report;
    report["format"] = 1;
    report["command"] = "fuzz";
    report["instances"] = rep.instances;
    report["checks"] = rep.checks;
    ordered_json findings = ordered_json::array();
    for (const auto& f : rep.findings) {
        findings.push_back({{"property", f.violation.property},
                            {"detail", f.violation.detail},
                            {"instance", f.instance}});
    }
    report["findings"] = std::move(findings);
    report["ok"] = rep.clean();

    std::string text = "fuzz: " + std::to_string(rep.instances) + " instances, " +
                       std::to_string(rep.checks) + " property checks, " +
                       std::to_string(rep.findings.size()) + " violations\n";
    for (const auto& f : rep.findings) {
        text += "  [" + f.violation.property + "] " + f.violation.detail + "\n";
    }
    if (!rep.findings.empty() && !counterexample_out.empty()) {
        write_file(counterexample_out, rep.findings.front().instance);
        text += "first counterexample instance written to " + counterexample_out + "\n";
    }
    emit(report, as_json, text);
    return rep.clean() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"permissionless quorum system analyzer and protocol simulator"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit the machine-readable report instead of text");

    int capacity = capacity_from_env(kDefaultLeagueCapacity);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "slices, survivor sets, quorums, leagues");
    analyze->fallthrough();
    std::string config_path, league_arg;
    std::vector<std::string> show;
    bool include_all = false;
    analyze->add_option("config", config_path, "configuration file")->required();
    analyze->add_option("--league", league_arg, "comma-separated ids, or 'all-maximal'");
    analyze->add_option("--show", show, "artifacts to print")
        ->delimiter(',')
        ->check(CLI::IsMember({"slices", "survivors", "quorums", "tolerated"}));
    analyze->add_flag("--include-all", include_all,
                      "list every closed-and-rooted set, not only minimal ones");
    analyze->add_option("--capacity", capacity, "exhaustive-search bound (exponential cost)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run protocols under an adversary");
    simulate->fallthrough();
    std::string sim_config, scenario_path, protocol = "broadcast", sender, value, writer, script;
    std::string faulty_spec, trace_path, scenario_out, adversarial;
    std::uint64_t seed = 0, sweep_count = 0, max_steps = 100000;
    bool force = false, disable_any = false;
    simulate->add_option("config", sim_config, "configuration file");
    simulate->add_option("--scenario", scenario_path, "full scenario file (overrides flags)");
    simulate->add_option("--protocol", protocol, "broadcast | register");
    simulate->add_option("--sender", sender, "broadcast sender id");
    simulate->add_option("--value", value, "broadcast value");
    simulate->add_option("--writer", writer, "register writer id");
    simulate->add_option("--script", script, "register script, e.g. p2:write:v@1,p3:read@400");
    simulate->add_option("--faulty", faulty_spec, "e.g. p1:lie-empty,p4:equivocate");
    simulate->add_option("--seed", seed, "replay seed");
    simulate->add_option("--sweep", sweep_count, "run seeds 0..k-1 and aggregate");
    simulate->add_option("--trace", trace_path, "write the trace (json-lines)");
    simulate->add_option("--scenario-out", scenario_out, "write the canonical scenario file");
    simulate->add_option("--max-steps", max_steps, "truncation bound");
    simulate->add_option("--adversarial-target", adversarial,
                         "maximize delays around this process");
    simulate->add_flag("--disable-any", disable_any,
                       "protocol-variant experiment: never gossip the star message");
    simulate->add_flag("--force", force, "simulate even untolerated faulty sets");

    // compare
    auto* compare = app.add_subcommand("compare", "bridges to the compared trust models");
    compare->fallthrough();
    std::string model_path, check, set_arg, faulty_arg;
    compare->add_option("model", model_path, "model file")->required();
    compare->add_option("--check", check, "q3|b3|thm1|thm2|guild|intact|cluster")->required();
    compare->add_option("--set", set_arg, "candidate set (intact/cluster)");
    compare->add_option("--faulty", faulty_arg, "actual faulty set");
    compare->add_option("--capacity", capacity, "exhaustive-search bound (exponential cost)");

    // fuzz
    auto* fuzz_cmd = app.add_subcommand("fuzz", "check the library against the brute-force oracle");
    fuzz_cmd->fallthrough();
    int processes = 5, instances = 100, oracle_bound = oracle::kDefaultBound;
    std::uint64_t fuzz_seed = 42;
    std::vector<std::string> properties;
    std::string counterexample_out;
    fuzz_cmd->add_option("--processes", processes, "universe size per instance");
    fuzz_cmd->add_option("--instances", instances, "random instances");
    fuzz_cmd->add_option("--seed", fuzz_seed, "generator seed");
    fuzz_cmd->add_option("--properties", properties, "subset of the property list")
        ->delimiter(',')
        ->check(CLI::IsMember(fuzz::kAllProperties));
    fuzz_cmd->add_option("--oracle-bound", oracle_bound,
                         "raise the exhaustive oracle bound (exponential cost)");
    fuzz_cmd->add_option("--counterexample-out", counterexample_out,
                         "persist the first failing instance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            return cmd_analyze(config_path, league_arg, show, include_all, capacity, as_json);
        }
        if (*simulate) {
            if (scenario_path.empty() && sim_config.empty()) {
                std::cerr << "simulate: need a config file or --scenario\n";
                return 2;
            }
            return cmd_simulate(sim_config, scenario_path, protocol, sender, value, writer,
                                script, faulty_spec, seed, sweep_count, trace_path, scenario_out,
                                max_steps, adversarial, disable_any, force, as_json);
        }
        if (*compare) {
            return cmd_compare(model_path, check, set_arg, faulty_arg, capacity, as_json);
        }
        if (*fuzz_cmd) {
            return cmd_fuzz(processes, instances, fuzz_seed, properties, oracle_bound,
                            counterexample_out, as_json);
        }
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
