#include "quorumlace/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace quorumlace {

using nlohmann::json;

namespace {

void check_format(const json& j, const char* what) {
    if (j.contains("format") && j.at("format").get<int>() != 1) {
        throw InputError(std::string(what) + ": unsupported format version");
    }
}

std::vector<std::string> string_array(const json& j, const char* field) {
    if (!j.is_array()) {
        throw InputError(std::string("expected an array for '") + field + "'");
    }
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) {
            throw InputError(std::string("expected string ids in '") + field + "'");
        }
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::vector<ProcSet> parse_family(const json& j, const Universe& u, const char* field) {
    if (!j.is_array()) {
        throw InputError(std::string("expected an array of sets for '") + field + "'");
    }
    std::vector<ProcSet> out;
    for (const auto& e : j) {
        out.push_back(u.parse_set(string_array(e, field)));
    }
    return out;
}

} // namespace

ordered_json set_to_json(ProcSet s, const Universe& u) {
    ordered_json arr = ordered_json::array();
    for (const std::string& name : u.set_names(s)) {
        arr.push_back(name);
    }
    return arr;
}

ordered_json family_to_json(const std::vector<ProcSet>& family, const Universe& u) {
    std::vector<ProcSet> sorted = family;
    canonicalize_family(sorted);
    ordered_json arr = ordered_json::array();
    for (ProcSet s : sorted) {
        arr.push_back(set_to_json(s, u));
    }
    return arr;
}

ordered_json config_to_json(const Configuration& c, const Universe& u) {
    ordered_json j;
    j["trusted"] = set_to_json(c.trusted, u);
    j["fail_prone"] = family_to_json(c.fail_prone, u);
    return j;
}

ordered_json message_to_json(const ProtocolMessage& m, const Universe& u) {
    ordered_json j;
    j["kind"] = msg_kind_name(m.kind);
    j["sender"] = u.name(m.sender);
    switch (m.kind) {
    case MsgKind::Send:
    case MsgKind::Echo:
    case MsgKind::Ready:
        j["value"] = m.value;
        break;
    case MsgKind::Any:
        j["star"] = true;
        break;
    case MsgKind::Write:
        j["ts"] = m.timestamp;
        j["value"] = m.value;
        j["sig"] = m.signature;
        break;
    case MsgKind::Ack:
        break;
    case MsgKind::Read:
        j["rid"] = m.read_id;
        break;
    case MsgKind::Value:
        j["rid"] = m.read_id;
        j["ts"] = m.timestamp;
        j["value"] = m.value;
        j["sig"] = m.signature;
        break;
    }
    j["config"] = config_to_json(m.config, u);
    return j;
}

// Config files -----------------------------------------------------------------

namespace {

Pfps parse_processes(const json& processes) {
    if (!processes.is_object() || processes.empty()) {
        throw InputError("'processes' must be a non-empty object");
    }
    // The universe is everything mentioned anywhere.
    std::set<std::string> mentioned;
    for (const auto& [id, body] : processes.items()) {
        mentioned.insert(id);
        for (const std::string& t : string_array(body.at("trusted"), "trusted")) {
            mentioned.insert(t);
        }
        if (body.contains("fail_prone")) {
            for (const auto& fp : body.at("fail_prone")) {
                for (const std::string& t : string_array(fp, "fail_prone")) {
                    mentioned.insert(t);
                }
            }
        }
    }
    for (const std::string& id : mentioned) {
        if (!processes.contains(id)) {
            throw InputError("process '" + id +
                             "' is referenced but has no configuration entry");
        }
    }
    Universe u(std::vector<std::string>(mentioned.begin(), mentioned.end()));
    Pfps f;
    f.universe = u;
    f.configs.resize(static_cast<std::size_t>(u.size()));
    for (const auto& [id, body] : processes.items()) {
        ProcSet trusted = u.parse_set(string_array(body.at("trusted"), "trusted"));
        std::vector<ProcSet> fp;
        if (body.contains("fail_prone")) {
            fp = parse_family(body.at("fail_prone"), u, "fail_prone");
        }
        f.configs[static_cast<std::size_t>(u.index(id))] =
            normalize_config(trusted, std::move(fp));
    }
    return f;
}

} // namespace

ConfigFile parse_config_file(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("config parse error: ") + e.what());
    }
    check_format(j, "config");
    ConfigFile cf;
    cf.pfps = parse_processes(j.at("processes"));
    if (j.contains("league")) {
        cf.league = cf.pfps.universe.parse_set(string_array(j.at("league"), "league"));
    }
    return cf;
}

ConfigFile load_config_file(const std::string& path) {
    return parse_config_file(read_file(path));
}

std::string render_config_file(const ConfigFile& cf) {
    ordered_json j;
    j["format"] = 1;
    ordered_json procs;
    for (int i = 0; i < cf.pfps.size(); ++i) {
        procs[cf.pfps.universe.name(i)] = config_to_json(cf.pfps.config(i), cf.pfps.universe);
    }
    j["processes"] = std::move(procs);
    if (cf.league) {
        j["league"] = set_to_json(*cf.league, cf.pfps.universe);
    }
    return j.dump(2) + "\n";
}

// Model files ------------------------------------------------------------------

ModelFile parse_model_file(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("model parse error: ") + e.what());
    }
    check_format(j, "model");
    std::string model = j.at("model").get<std::string>();
    ModelFile out;
    if (model == "pfps") {
        out.kind = ModelFile::Kind::PfpsModel;
        out.pfps = parse_processes(j.at("processes"));
        return out;
    }
    Universe u(string_array(j.at("processes"), "processes"));
    if (model == "symmetric") {
        out.kind = ModelFile::Kind::Symmetric;
        out.symmetric = SymmetricSystem::make(u, parse_family(j.at("fail_prone"), u, "fail_prone"));
    } else if (model == "asymmetric") {
        out.kind = ModelFile::Kind::Asymmetric;
        std::vector<std::vector<ProcSet>> fp(static_cast<std::size_t>(u.size()));
        for (const auto& [id, fam] : j.at("fail_prone").items()) {
            fp[static_cast<std::size_t>(u.index(id))] = parse_family(fam, u, "fail_prone");
        }
        out.asymmetric = AsymmetricSystem::make(u, std::move(fp));
    } else if (model == "fbas") {
        out.kind = ModelFile::Kind::Fbas;
        out.fbas.universe = u;
        out.fbas.known.resize(static_cast<std::size_t>(u.size()));
        out.fbas.slices.resize(static_cast<std::size_t>(u.size()));
        for (const auto& [id, k] : j.at("known").items()) {
            out.fbas.known[static_cast<std::size_t>(u.index(id))] =
                u.parse_set(string_array(k, "known"));
        }
        for (const auto& [id, sl] : j.at("slices").items()) {
            out.fbas.slices[static_cast<std::size_t>(u.index(id))] = parse_family(sl, u, "slices");
        }
    } else if (model == "pbqs") {
        out.kind = ModelFile::Kind::Pbqs;
        out.pbqs.universe = u;
        out.pbqs.quorum_families.resize(static_cast<std::size_t>(u.size()));
        for (const auto& [id, q] : j.at("quorums").items()) {
            out.pbqs.quorum_families[static_cast<std::size_t>(u.index(id))] =
                parse_family(q, u, "quorums");
        }
    } else {
        throw InputError("unknown model discriminator '" + model + "'");
    }
    return out;
}

ModelFile load_model_file(const std::string& path) {
    return parse_model_file(read_file(path));
}

// Behaviors and scenarios ---------------------------------------------------------

ordered_json behavior_to_json(const Behavior& b, const Universe& u) {
    ordered_json j;
    switch (b.type) {
    case Behavior::Type::Honest:
        j["behavior"] = "honest";
        break;
    case Behavior::Type::Crash:
        j["behavior"] = "crash";
        j["step"] = b.crash_step;
        break;
    case Behavior::Type::Mute:
        j["behavior"] = "mute";
        break;
    case Behavior::Type::LieConfig:
        if (b.advertised) {
            j["behavior"] = "lie";
            j["config"] = config_to_json(*b.advertised, u);
        } else {
            j["behavior"] = "lie-empty";
        }
        break;
    case Behavior::Type::WorstCase:
        j["behavior"] = "worst-case";
        break;
    case Behavior::Type::Equivocate:
        j["behavior"] = "equivocate";
        j["partition_a"] = set_to_json(b.partition_a, u);
        j["partition_b"] = set_to_json(b.partition_b, u);
        j["value_a"] = b.value_a;
        j["value_b"] = b.value_b;
        break;
    }
    return j;
}

Behavior behavior_from_json(const json& j, const Universe& u) {
    std::string kind = j.at("behavior").get<std::string>();
    if (kind == "honest") {
        return Behavior::honest();
    }
    if (kind == "crash") {
        return Behavior::crash(j.at("step").get<std::uint64_t>());
    }
    if (kind == "mute") {
        return Behavior::mute();
    }
    if (kind == "lie-empty") {
        return Behavior::lie_empty();
    }
    if (kind == "lie") {
        const json& c = j.at("config");
        ProcSet trusted = u.parse_set(string_array(c.at("trusted"), "trusted"));
        std::vector<ProcSet> fp;
        if (c.contains("fail_prone")) {
            fp = parse_family(c.at("fail_prone"), u, "fail_prone");
        }
        return Behavior::lie(normalize_config(trusted, std::move(fp)));
    }
    if (kind == "worst-case") {
        return Behavior::worst_case();
    }
    if (kind == "equivocate") {
        return Behavior::equivocate(u.parse_set(string_array(j.at("partition_a"), "partition_a")),
                                    u.parse_set(string_array(j.at("partition_b"), "partition_b")),
                                    j.at("value_a").get<std::string>(),
                                    j.at("value_b").get<std::string>());
    }
    throw InputError("unknown behavior '" + kind + "'");
}

Scenario parse_scenario_file(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("scenario parse error: ") + e.what());
    }
    check_format(j, "scenario");
    Scenario sc;
    sc.name = j.value("name", std::string("scenario"));
    sc.pfps = parse_processes(j.at("processes"));
    const Universe& u = sc.pfps.universe;
    sc.league = j.contains("league") ? u.parse_set(string_array(j.at("league"), "league"))
                                     : u.full();
    std::string proto = j.at("protocol").get<std::string>();
    if (proto == "broadcast") {
        sc.protocol = Scenario::Protocol::Broadcast;
        sc.sender = u.index(j.at("sender").get<std::string>());
        sc.value = j.at("value").get<std::string>();
    } else if (proto == "register") {
        sc.protocol = Scenario::Protocol::Register;
        sc.writer = u.index(j.at("writer").get<std::string>());
        for (const auto& e : j.at("script")) {
            ScriptEntry entry;
            entry.at_step = e.value("at", std::uint64_t{1});
            entry.process = u.index(e.at("process").get<std::string>());
            std::string op = e.at("op").get<std::string>();
            if (op == "write") {
                entry.op = ScriptEntry::Op::Write;
                entry.value = e.at("value").get<std::string>();
            } else if (op == "read") {
                entry.op = ScriptEntry::Op::Read;
            } else {
                throw InputError("unknown script op '" + op + "'");
            }
            sc.script.push_back(entry);
        }
    } else {
        throw InputError("unknown protocol '" + proto + "'");
    }
    if (j.contains("faulty")) {
        for (const auto& [id, b] : j.at("faulty").items()) {
            sc.faulty[u.index(id)] = behavior_from_json(b, u);
        }
    }
    sc.seed = j.value("seed", std::uint64_t{0});
    sc.max_steps = j.value("max_steps", std::uint64_t{100000});
    if (j.contains("adversarial_target")) {
        sc.adversarial_target = u.index(j.at("adversarial_target").get<std::string>());
    }
    sc.disable_any = j.value("disable_any", false);
    sc.validate();
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    return parse_scenario_file(read_file(path));
}

std::string render_scenario_file(const Scenario& sc) {
    const Universe& u = sc.pfps.universe;
    ordered_json j;
    j["format"] = 1;
    j["name"] = sc.name;
    ordered_json procs;
    for (int i = 0; i < sc.pfps.size(); ++i) {
        procs[u.name(i)] = config_to_json(sc.pfps.config(i), u);
    }
    j["processes"] = std::move(procs);
    j["league"] = set_to_json(sc.league, u);
    if (sc.protocol == Scenario::Protocol::Broadcast) {
        j["protocol"] = "broadcast";
        j["sender"] = u.name(sc.sender);
        j["value"] = sc.value;
    } else {
        j["protocol"] = "register";
        j["writer"] = u.name(sc.writer);
        ordered_json script = ordered_json::array();
        for (const ScriptEntry& e : sc.script) {
            ordered_json entry;
            entry["at"] = e.at_step;
            entry["process"] = u.name(e.process);
            entry["op"] = e.op == ScriptEntry::Op::Write ? "write" : "read";
            if (e.op == ScriptEntry::Op::Write) {
                entry["value"] = e.value;
            }
            script.push_back(std::move(entry));
        }
        j["script"] = std::move(script);
    }
    ordered_json faulty;
    for (const auto& [p, b] : sc.faulty) {
        faulty[u.name(p)] = behavior_to_json(b, u);
    }
    j["faulty"] = std::move(faulty);
    j["seed"] = sc.seed;
    j["max_steps"] = sc.max_steps;
    if (sc.adversarial_target) {
        j["adversarial_target"] = u.name(*sc.adversarial_target);
    }
    if (sc.disable_any) {
        j["disable_any"] = true;
    }
    return j.dump(2) + "\n";
}

std::map<int, Behavior> parse_faulty_spec(const std::string& spec, const Pfps& f,
                                          const std::string& base_value) {
    std::map<int, Behavior> out;
    if (spec.empty()) {
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::vector<std::string> parts;
        std::stringstream is(item);
        std::string part;
        while (std::getline(is, part, ':')) {
            parts.push_back(part);
        }
        if (parts.size() < 2) {
            throw InputError("bad faulty spec item '" + item + "' (want <id>:<behavior>)");
        }
        int p = f.universe.index(parts[0]);
        const std::string& kind = parts[1];
        if (kind == "mute") {
            out[p] = Behavior::mute();
        } else if (kind == "crash") {
            out[p] = Behavior::crash(parts.size() > 2 ? std::stoull(parts[2]) : 50);
        } else if (kind == "lie-empty") {
            out[p] = Behavior::lie_empty();
        } else if (kind == "worst-case") {
            out[p] = Behavior::worst_case();
        } else if (kind == "honest") {
            out[p] = Behavior::honest();
        } else if (kind == "equivocate") {
            // Default partition: alternate the other processes between the
            // two faces; derived second value.
            ProcSet a, bset;
            bool flip = false;
            for (int i = 0; i < f.size(); ++i) {
                if (i == p) {
                    continue;
                }
                (flip ? bset : a).add(i);
                flip = !flip;
            }
            out[p] = Behavior::equivocate(a, bset, base_value, base_value + "'");
        } else {
            throw InputError("unknown behavior '" + kind + "' in faulty spec");
        }
    }
    return out;
}

ordered_json check_report_to_json(const CheckReport& rep) {
    ordered_json j;
    j["precondition_ok"] = rep.precondition_ok;
    if (!rep.precondition_ok) {
        j["precondition_detail"] = rep.precondition_detail;
    }
    j["truncated"] = rep.truncated;
    ordered_json verdicts = ordered_json::array();
    for (const PropertyVerdict& v : rep.verdicts) {
        ordered_json e;
        e["property"] = v.property;
        e["applicable"] = v.applicable;
        e["passed"] = v.passed;
        if (!v.detail.empty()) {
            e["detail"] = v.detail;
        }
        verdicts.push_back(std::move(e));
    }
    j["verdicts"] = std::move(verdicts);
    j["all_passed"] = rep.all_passed();
    return j;
}

ordered_json sweep_report_to_json(const SweepReport& rep) {
    ordered_json j;
    j["runs"] = rep.runs;
    j["passed"] = rep.passed;
    j["skipped_untolerated"] = rep.skipped_untolerated;
    j["truncated"] = rep.truncated;
    ordered_json violations = ordered_json::array();
    for (const SweepViolation& v : rep.violations) {
        ordered_json e;
        e["scenario"] = v.scenario;
        e["seed"] = v.seed;
        e["property"] = v.property;
        e["detail"] = v.detail;
        violations.push_back(std::move(e));
    }
    j["violations"] = std::move(violations);
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << content;
}

} // namespace quorumlace
