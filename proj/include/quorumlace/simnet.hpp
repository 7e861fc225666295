#pragma once

#include "quorumlace/model.hpp"
#include "quorumlace/protocol.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace quorumlace {

// Adversary behaviors ---------------------------------------------------------

struct Behavior {
    enum class Type { Honest, Crash, Mute, LieConfig, Equivocate, WorstCase };
    Type type = Type::Honest;

    std::uint64_t crash_step = 0;             // Crash: silent from this step on
    std::optional<Configuration> advertised;  // LieConfig; empty config if unset
    ProcSet partition_a, partition_b;         // Equivocate
    std::string value_a, value_b;             // Equivocate

    static Behavior honest() { return {}; }
    static Behavior mute() { return Behavior{Type::Mute, 0, {}, {}, {}, {}, {}}; }
    static Behavior crash(std::uint64_t step) {
        return Behavior{Type::Crash, step, {}, {}, {}, {}, {}};
    }
    static Behavior lie_empty() { return Behavior{Type::LieConfig, 0, {}, {}, {}, {}, {}}; }
    static Behavior lie(Configuration c) {
        return Behavior{Type::LieConfig, 0, std::move(c), {}, {}, {}, {}};
    }
    static Behavior worst_case() { return Behavior{Type::WorstCase, 0, {}, {}, {}, {}, {}}; }
    static Behavior equivocate(ProcSet a, ProcSet b, std::string va, std::string vb) {
        return Behavior{Type::Equivocate, 0, {}, a, b, std::move(va), std::move(vb)};
    }
};

// Scenarios ----------------------------------------------------------------------

struct ScriptEntry {
    std::uint64_t at_step = 0;
    int process = -1;
    enum class Op { Write, Read } op = Op::Read;
    std::string value;
};

struct Scenario {
    std::string name;
    Pfps pfps;
    ProcSet league;
    std::map<int, Behavior> faulty;

    enum class Protocol { Broadcast, Register } protocol = Protocol::Broadcast;
    int sender = -1;          // broadcast
    std::string value;        // broadcast
    int writer = -1;          // register
    std::vector<ScriptEntry> script;

    std::uint64_t seed = 0;
    std::uint64_t max_steps = 100000;
    std::optional<int> adversarial_target; // delay-maximized scheduling
    bool disable_any = false;              // protocol-variant experiment knob

    ProcSet faulty_set() const;
    void validate() const; // throws InputError on inconsistent fields
};

// Traces ---------------------------------------------------------------------------

struct TraceRecord {
    std::uint64_t step = 0;
    enum class Kind { Invoke, Send, DeliverMsg, Output } kind = Kind::Invoke;
    int process = -1;
    nlohmann::ordered_json payload;
};

struct Trace {
    std::vector<TraceRecord> records;
    bool truncated = false;
    // Bookkeeping for the fairness identity: every enqueued correct-to-correct
    // delivery must have happened by quiescence.
    std::uint64_t expected_cc_deliveries = 0;
    std::uint64_t actual_cc_deliveries = 0;

    std::string to_jsonl(const Universe& u) const;
};

// Runs the scenario until quiescence or max_steps. Identical scenarios
// (seed included) produce bitwise-identical traces.
Trace run(const Scenario& scenario);

// Checkers ---------------------------------------------------------------------------

struct PropertyVerdict {
    std::string property;
    bool applicable = true; // liveness clauses are skipped on truncated runs
    bool passed = true;
    std::string detail;
};

struct CheckReport {
    bool precondition_ok = true;
    std::string precondition_detail;
    bool truncated = false;
    std::vector<PropertyVerdict> verdicts;

    bool all_passed() const {
        for (const auto& v : verdicts) {
            if (v.applicable && !v.passed) {
                return false;
            }
        }
        return true;
    }
};

// Def-11 properties (validity, integrity, consistency, totality) plus the
// trace-level invariants (fairness, authenticity, cascade realization).
// Refuses scenarios whose faulty set is not tolerated by the league.
CheckReport check_broadcast(const Trace& trace, const Scenario& scenario);

// Def-10 properties (termination, validity) plus trace-level invariants.
CheckReport check_register(const Trace& trace, const Scenario& scenario);

// Sweeps --------------------------------------------------------------------------------

struct SweepViolation {
    std::string scenario;
    std::uint64_t seed = 0;
    std::string property;
    std::string detail;
};

struct SweepReport {
    std::uint64_t runs = 0;
    std::uint64_t passed = 0;
    std::uint64_t skipped_untolerated = 0;
    std::uint64_t truncated = 0;
    std::vector<SweepViolation> violations;

    bool clean() const { return violations.empty(); }
    void merge(const SweepReport& other);
};

struct FaultyAssignment {
    std::string label;
    std::map<int, Behavior> behaviors;
    bool expected_untolerated = false;
};

// Runs the template against every (faulty assignment, seed) combination and
// aggregates verdicts; untolerated assignments are skipped unless marked
// expected-untolerated (then skipped with a note either way).
SweepReport sweep(const Scenario& base, const std::vector<FaultyAssignment>& assignments,
                  const std::vector<std::uint64_t>& seeds);

} // namespace quorumlace
