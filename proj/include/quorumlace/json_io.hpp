#pragma once

#include "quorumlace/bridges.hpp"
#include "quorumlace/model.hpp"
#include "quorumlace/protocol.hpp"
#include "quorumlace/simnet.hpp"

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

namespace quorumlace {

using nlohmann::ordered_json;

// Canonical fragments: process sets as sorted id arrays, fixed field order.
ordered_json set_to_json(ProcSet s, const Universe& u);
ordered_json family_to_json(const std::vector<ProcSet>& family, const Universe& u);
ordered_json config_to_json(const Configuration& c, const Universe& u);
ordered_json message_to_json(const ProtocolMessage& m, const Universe& u);

struct ConfigFile {
    Pfps pfps;
    std::optional<ProcSet> league;
};

// { "format": 1, "processes": { id: { "trusted": [...], "fail_prone": [[...]] } },
//   "league": [...] }
// The universe is every id appearing anywhere; each member must be configured.
ConfigFile parse_config_file(const std::string& text);
ConfigFile load_config_file(const std::string& path);
std::string render_config_file(const ConfigFile& cf);

struct ModelFile {
    enum class Kind { Symmetric, Asymmetric, Fbas, Pbqs, PfpsModel } kind = Kind::Symmetric;
    SymmetricSystem symmetric;
    AsymmetricSystem asymmetric;
    FbasSystem fbas;
    PbqsSystem pbqs;
    Pfps pfps;
};

// Discriminated by a "model" field ∈ {symmetric, asymmetric, fbas, pbqs, pfps}.
ModelFile parse_model_file(const std::string& text);
ModelFile load_model_file(const std::string& path);

Scenario parse_scenario_file(const std::string& text);
Scenario load_scenario_file(const std::string& path);
std::string render_scenario_file(const Scenario& sc);

ordered_json behavior_to_json(const Behavior& b, const Universe& u);
Behavior behavior_from_json(const nlohmann::json& j, const Universe& u);

// "p1:lie-empty,p4:mute,p2:crash:40,p3:equivocate" — equivocate gets a
// default half/half partition of the other processes and derived values.
std::map<int, Behavior> parse_faulty_spec(const std::string& spec, const Pfps& f,
                                          const std::string& base_value);

ordered_json check_report_to_json(const CheckReport& rep);
ordered_json sweep_report_to_json(const SweepReport& rep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace quorumlace
