#include "quorumlace/simnet.hpp"

#include "quorumlace/json_io.hpp"
#include "quorumlace/rng.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace quorumlace {

using nlohmann::ordered_json;

ProcSet Scenario::faulty_set() const {
    ProcSet s;
    for (const auto& [p, b] : faulty) {
        s.add(p);
    }
    return s;
}

void Scenario::validate() const {
    int n = pfps.size();
    if (!league.subset_of(pfps.universe.full())) {
        throw InputError("scenario: league escapes the universe");
    }
    for (const auto& [p, b] : faulty) {
        if (p < 0 || p >= n) {
            throw InputError("scenario: faulty process out of range");
        }
        if (b.type == Behavior::Type::Equivocate) {
            if (protocol != Protocol::Broadcast || p != sender) {
                throw InputError("scenario: equivocate is only valid on the broadcast sender");
            }
        }
    }
    if (protocol == Protocol::Broadcast) {
        if (sender < 0 || sender >= n) {
            throw InputError("scenario: broadcast sender out of range");
        }
    } else {
        if (writer < 0 || writer >= n) {
            throw InputError("scenario: register writer out of range");
        }
        for (const auto& e : script) {
            if (e.process < 0 || e.process >= n) {
                throw InputError("scenario: script process out of range");
            }
            if (e.op == ScriptEntry::Op::Write && e.process != writer) {
                throw InputError("scenario: only the designated writer may write");
            }
        }
    }
    if (max_steps == 0) {
        throw InputError("scenario: max_steps must be positive");
    }
}

std::string Trace::to_jsonl(const Universe& u) const {
    (void)u;
    std::string out;
    for (const TraceRecord& r : records) {
        ordered_json line;
        line["step"] = r.step;
        switch (r.kind) {
        case TraceRecord::Kind::Invoke: line["kind"] = "invoke"; break;
        case TraceRecord::Kind::Send: line["kind"] = "send"; break;
        case TraceRecord::Kind::DeliverMsg: line["kind"] = "deliver-msg"; break;
        case TraceRecord::Kind::Output: line["kind"] = "output"; break;
        }
        line["process"] = u.name(r.process);
        line["payload"] = r.payload;
        out += line.dump();
        out += "\n";
    }
    if (truncated) {
        ordered_json line;
        line["truncated"] = true;
        out += line.dump();
        out += "\n";
    }
    return out;
}

// Engine ------------------------------------------------------------------------

namespace {

struct QItem {
    std::uint64_t due = 0;
    std::uint64_t seq = 0;
    bool is_invoke = false;
    int process = -1;      // recipient, or invoking process
    ProtocolMessage msg;   // message items
    ScriptEntry invoke;    // invoke items (broadcast uses op=Write with the value)

    friend bool operator<(const QItem& a, const QItem& b) {
        if (a.due != b.due) {
            return a.due < b.due;
        }
        return a.seq < b.seq;
    }
};

constexpr std::uint64_t kDelaySpread = 8;
constexpr std::uint64_t kByzantineExtraDelay = 16;
constexpr std::uint64_t kAdversarialDelay = 64;

class Engine {
  public:
    explicit Engine(const Scenario& sc) : sc_(sc), n_(sc.pfps.size()), rng_(sc.seed ^ 0x5eed) {
        sc_.validate();
        faulty_ = sc_.faulty_set();
        correct_ = sc_.pfps.universe.full() - faulty_;
    }

    Trace run() {
        init_machines();
        seed_invocations();
        while (!queue_.empty()) {
            if (clock_ >= sc_.max_steps) {
                trace_.truncated = true;
                break;
            }
            QItem item = *queue_.begin();
            queue_.erase(queue_.begin());
            if (item.is_invoke) {
                dispatch_invoke(item);
            } else {
                dispatch_message(item);
            }
        }
        return std::move(trace_);
    }

  private:
    Scenario sc_;
    int n_;
    Rng rng_;
    MockSignatureScheme sigs_;
    std::vector<BroadcastState> bst_;
    std::vector<RegisterState> rst_;
    std::set<QItem> queue_;
    std::uint64_t seq_ = 0;
    std::uint64_t clock_ = 0;
    Trace trace_;
    ProcSet faulty_;
    ProcSet correct_;

    const Behavior* behavior_of(int p) const {
        auto it = sc_.faulty.find(p);
        return it == sc_.faulty.end() ? nullptr : &it->second;
    }

    bool crashed(int p) const {
        const Behavior* b = behavior_of(p);
        return b != nullptr && b->type == Behavior::Type::Crash && clock_ >= b->crash_step;
    }

    bool silenced(int p) const {
        const Behavior* b = behavior_of(p);
        if (b == nullptr) {
            return false;
        }
        return b->type == Behavior::Type::Mute ||
               (b->type == Behavior::Type::Crash && clock_ >= b->crash_step);
    }

    void init_machines() {
        if (sc_.protocol == Scenario::Protocol::Broadcast) {
            bst_.reserve(static_cast<std::size_t>(n_));
            for (int i = 0; i < n_; ++i) {
                bst_.push_back(BroadcastState::make(i, sc_.sender, n_, sc_.pfps.config(i)));
                bst_.back().any_clause_enabled = !sc_.disable_any;
            }
        } else {
            rst_.reserve(static_cast<std::size_t>(n_));
            const std::string& wname = sc_.pfps.universe.name(sc_.writer);
            for (int i = 0; i < n_; ++i) {
                rst_.push_back(
                    RegisterState::make(i, sc_.writer, n_, sc_.pfps.config(i), wname, &sigs_));
            }
        }
    }

    void seed_invocations() {
        if (sc_.protocol == Scenario::Protocol::Broadcast) {
            QItem item;
            item.due = 1;
            item.seq = seq_++;
            item.is_invoke = true;
            item.process = sc_.sender;
            item.invoke = ScriptEntry{1, sc_.sender, ScriptEntry::Op::Write, sc_.value};
            queue_.insert(std::move(item));
        } else {
            for (const ScriptEntry& e : sc_.script) {
                QItem item;
                item.due = e.at_step;
                item.seq = seq_++;
                item.is_invoke = true;
                item.process = e.process;
                item.invoke = e;
                queue_.insert(std::move(item));
            }
        }
    }

    void record(TraceRecord::Kind kind, int process, ordered_json payload) {
        trace_.records.push_back(TraceRecord{clock_, kind, process, std::move(payload)});
        ++clock_;
    }

    void enqueue_message(int from, int to, const ProtocolMessage& msg) {
        std::uint64_t delay = 1 + rng_.below(kDelaySpread);
        if (faulty_.has(from)) {
            if (rng_.chance(1, 4)) {
                return; // the adversary withholds its own message
            }
            delay += rng_.below(kByzantineExtraDelay);
        }
        if (sc_.adversarial_target && (from == *sc_.adversarial_target || to == *sc_.adversarial_target)) {
            delay += kAdversarialDelay;
        }
        QItem item;
        item.due = clock_ + delay;
        item.seq = seq_++;
        item.process = to;
        item.msg = msg;
        if (correct_.has(from) && correct_.has(to)) {
            ++trace_.expected_cc_deliveries;
        }
        queue_.insert(std::move(item));
    }

    ProtocolMessage transform_outgoing(int p, ProtocolMessage msg) const {
        const Behavior* b = behavior_of(p);
        if (b == nullptr) {
            return msg;
        }
        switch (b->type) {
        case Behavior::Type::LieConfig:
            msg.config = b->advertised.value_or(Configuration::empty_config());
            break;
        case Behavior::Type::WorstCase:
            msg.config = Configuration::empty_config();
            break;
        default:
            break;
        }
        return msg;
    }

    void emit_actions(int p, const std::vector<Action>& actions) {
        for (const Action& a : actions) {
            switch (a.kind) {
            case Action::Kind::Gossip: {
                if (silenced(p)) {
                    break;
                }
                ProtocolMessage msg = transform_outgoing(p, a.message);
                ordered_json payload;
                payload["to"] = "*";
                payload["message"] = message_to_json(msg, sc_.pfps.universe);
                record(TraceRecord::Kind::Send, p, std::move(payload));
                for (int r = 0; r < n_; ++r) {
                    enqueue_message(p, r, msg);
                }
                break;
            }
            case Action::Kind::GossipTo: {
                if (silenced(p)) {
                    break;
                }
                ProtocolMessage msg = transform_outgoing(p, a.message);
                ordered_json payload;
                payload["to"] = sc_.pfps.universe.name(a.target);
                payload["message"] = message_to_json(msg, sc_.pfps.universe);
                record(TraceRecord::Kind::Send, p, std::move(payload));
                enqueue_message(p, a.target, msg);
                break;
            }
            case Action::Kind::Deliver: {
                ordered_json payload;
                payload["event"] = "deliver";
                payload["value"] = a.value;
                record(TraceRecord::Kind::Output, p, std::move(payload));
                break;
            }
            case Action::Kind::WriteReturn: {
                ordered_json payload;
                payload["event"] = "write-return";
                payload["value"] = a.value;
                record(TraceRecord::Kind::Output, p, std::move(payload));
                break;
            }
            case Action::Kind::ReadReturn: {
                ordered_json payload;
                payload["event"] = "read-return";
                payload["value"] = a.value;
                record(TraceRecord::Kind::Output, p, std::move(payload));
                break;
            }
            }
        }
    }

    void equivocate_broadcast(int p, const Behavior& b) {
        // Scripted two-faced sender: a full send/echo/ready face per partition.
        struct Face {
            ProcSet members;
            const std::string* value;
        };
        Face faces[2] = {{b.partition_a, &b.value_a}, {b.partition_b, &b.value_b}};
        for (const Face& face : faces) {
            for (MsgKind kind : {MsgKind::Send, MsgKind::Echo, MsgKind::Ready}) {
                ProtocolMessage msg;
                msg.kind = kind;
                msg.sender = p;
                msg.value = *face.value;
                msg.config = sc_.pfps.config(p);
                ordered_json payload;
                payload["to"] = sc_.pfps.universe.set_names(face.members);
                payload["message"] = message_to_json(msg, sc_.pfps.universe);
                record(TraceRecord::Kind::Send, p, std::move(payload));
                for (int r = 0; r < n_; ++r) {
                    if (face.members.has(r)) {
                        enqueue_message(p, r, msg);
                    }
                }
            }
        }
    }

    void dispatch_invoke(const QItem& item) {
        int p = item.process;
        if (crashed(p)) {
            return;
        }
        if (sc_.protocol == Scenario::Protocol::Register) {
            RegisterState& st = rst_[static_cast<std::size_t>(p)];
            if (st.write_active || st.read_active) {
                // Sequential access per process: defer until the pending
                // operation completes. Deferral consumes a step so that a
                // stuck operation runs into the truncation bound instead of
                // spinning ahead of still-undelivered messages.
                QItem retry = item;
                retry.due = clock_ + 1;
                retry.seq = seq_++;
                queue_.insert(std::move(retry));
                ++clock_;
                return;
            }
            ordered_json payload;
            if (item.invoke.op == ScriptEntry::Op::Write) {
                payload["op"] = "write";
                payload["value"] = item.invoke.value;
            } else {
                payload["op"] = "read";
            }
            record(TraceRecord::Kind::Invoke, p, std::move(payload));
            std::vector<Action> actions =
                item.invoke.op == ScriptEntry::Op::Write
                    ? reg_step(st, RegWriteInvoke{item.invoke.value})
                    : reg_step(st, RegReadInvoke{});
            emit_actions(p, actions);
            return;
        }

        ordered_json payload;
        payload["op"] = "r-broadcast";
        payload["value"] = item.invoke.value;
        record(TraceRecord::Kind::Invoke, p, std::move(payload));
        const Behavior* b = behavior_of(p);
        if (b != nullptr && b->type == Behavior::Type::Equivocate) {
            equivocate_broadcast(p, *b);
            return;
        }
        emit_actions(p, rb_step(bst_[static_cast<std::size_t>(p)],
                                RbBroadcastInvoke{item.invoke.value}));
    }

    void dispatch_message(const QItem& item) {
        int p = item.process;
        if (crashed(p)) {
            return;
        }
        const Behavior* b = behavior_of(p);
        if (b != nullptr && b->type == Behavior::Type::Equivocate) {
            return; // scripted; ignores incoming traffic
        }
        if (correct_.has(item.msg.sender) && correct_.has(p)) {
            ++trace_.actual_cc_deliveries;
        }
        ordered_json payload;
        payload["message"] = message_to_json(item.msg, sc_.pfps.universe);
        record(TraceRecord::Kind::DeliverMsg, p, std::move(payload));
        if (sc_.protocol == Scenario::Protocol::Broadcast) {
            emit_actions(p, rb_step(bst_[static_cast<std::size_t>(p)], RbMessage{item.msg}));
        } else {
            emit_actions(p, reg_step(rst_[static_cast<std::size_t>(p)], RegMessage{item.msg}));
        }
    }
};

} // namespace

Trace run(const Scenario& scenario) {
    Engine engine(scenario);
    return engine.run();
}

// Checkers -----------------------------------------------------------------------

namespace {

struct OpRecord {
    std::uint64_t invoke_step = 0;
    std::uint64_t return_step = 0;
    bool returned = false;
    bool is_write = false;
    std::string written_value;
    std::string returned_value;
};

// Authenticity of correct processes' traffic: sender field matches the
// recording process and the advertised configuration is the true one.
PropertyVerdict check_authenticity(const Trace& trace, const Scenario& sc, ProcSet correct) {
    PropertyVerdict v{"authenticity", true, true, ""};
    for (const TraceRecord& r : trace.records) {
        if (r.kind != TraceRecord::Kind::Send || !correct.has(r.process)) {
            continue;
        }
        const auto& msg = r.payload.at("message");
        if (msg.at("sender").get<std::string>() != sc.pfps.universe.name(r.process)) {
            v.passed = false;
            v.detail = "correct process sent a message under a foreign identity";
            return v;
        }
        ordered_json truth = config_to_json(sc.pfps.config(r.process), sc.pfps.universe);
        if (msg.at("config") != truth) {
            v.passed = false;
            v.detail = "correct process advertised a configuration differing from its entry";
            return v;
        }
    }
    return v;
}

PropertyVerdict check_fairness(const Trace& trace) {
    PropertyVerdict v{"fairness", !trace.truncated, true, ""};
    if (v.applicable && trace.expected_cc_deliveries != trace.actual_cc_deliveries) {
        v.passed = false;
        v.detail = "correct-to-correct deliveries " + std::to_string(trace.actual_cc_deliveries) +
                   " != enqueued " + std::to_string(trace.expected_cc_deliveries);
    }
    return v;
}

} // namespace

CheckReport check_broadcast(const Trace& trace, const Scenario& sc) {
    CheckReport rep;
    rep.truncated = trace.truncated;
    ProcSet faulty = sc.faulty_set();
    if (!tolerated_by(sc.pfps, sc.league, faulty)) {
        rep.precondition_ok = false;
        rep.precondition_detail = "faulty set " + sc.pfps.universe.set_to_string(faulty) +
                                  " is not tolerated by the league";
        return rep;
    }
    ProcSet correct = sc.pfps.universe.full() - faulty;
    ProcSet league_correct = sc.league & correct;
    bool sender_correct = correct.has(sc.sender);

    std::vector<std::vector<std::string>> delivered(static_cast<std::size_t>(sc.pfps.size()));
    std::string broadcast_value;
    bool invoked = false;
    std::map<std::string, ProcSet> ready_senders;
    for (const TraceRecord& r : trace.records) {
        if (r.kind == TraceRecord::Kind::Invoke && r.payload.value("op", "") == "r-broadcast") {
            broadcast_value = r.payload.at("value").get<std::string>();
            invoked = true;
        } else if (r.kind == TraceRecord::Kind::Output &&
                   r.payload.value("event", "") == "deliver") {
            delivered[static_cast<std::size_t>(r.process)].push_back(
                r.payload.at("value").get<std::string>());
        } else if (r.kind == TraceRecord::Kind::Send && correct.has(r.process)) {
            const auto& msg = r.payload.at("message");
            if (msg.at("kind").get<std::string>() == "ready") {
                ready_senders[msg.at("value").get<std::string>()].add(r.process);
            }
        }
    }

    // Integrity, first clause: at most one delivery per correct process.
    {
        PropertyVerdict v{"integrity", true, true, ""};
        for (int p = 0; p < sc.pfps.size(); ++p) {
            if (correct.has(p) && delivered[static_cast<std::size_t>(p)].size() > 1) {
                v.passed = false;
                v.detail = sc.pfps.universe.name(p) + " delivered more than once";
            }
        }
        // Second clause: provenance when the sender is correct.
        if (v.passed && sender_correct && invoked) {
            for (int p = 0; p < sc.pfps.size(); ++p) {
                if (!league_correct.has(p)) {
                    continue;
                }
                for (const std::string& val : delivered[static_cast<std::size_t>(p)]) {
                    if (val != broadcast_value) {
                        v.passed = false;
                        v.detail = sc.pfps.universe.name(p) + " delivered a value never broadcast";
                    }
                }
            }
        }
        rep.verdicts.push_back(v);
    }

    // Consistency: equal values among correct league members (safety; checked
    // on truncated traces too).
    {
        PropertyVerdict v{"consistency", true, true, ""};
        std::string seen;
        bool have = false;
        for (int p = 0; p < sc.pfps.size(); ++p) {
            if (!league_correct.has(p)) {
                continue;
            }
            for (const std::string& val : delivered[static_cast<std::size_t>(p)]) {
                if (!have) {
                    seen = val;
                    have = true;
                } else if (val != seen) {
                    v.passed = false;
                    v.detail = "league members delivered '" + seen + "' and '" + val + "'";
                }
            }
        }
        rep.verdicts.push_back(v);
    }

    // Validity: with a correct sender every correct league member delivers
    // the broadcast value. Liveness; quiescent traces only.
    {
        PropertyVerdict v{"validity", sender_correct && invoked && !trace.truncated, true, ""};
        if (v.applicable) {
            for (int p = 0; p < sc.pfps.size(); ++p) {
                if (!league_correct.has(p)) {
                    continue;
                }
                const auto& d = delivered[static_cast<std::size_t>(p)];
                if (d.size() != 1 || d[0] != broadcast_value) {
                    v.passed = false;
                    v.detail = sc.pfps.universe.name(p) + " did not deliver the broadcast value";
                }
            }
        }
        rep.verdicts.push_back(v);
    }

    // Totality: one correct league delivery forces all. Quiescent only.
    {
        PropertyVerdict v{"totality", !trace.truncated, true, ""};
        if (v.applicable) {
            bool any = false;
            for (int p = 0; p < sc.pfps.size(); ++p) {
                if (league_correct.has(p) && !delivered[static_cast<std::size_t>(p)].empty()) {
                    any = true;
                }
            }
            if (any) {
                for (int p = 0; p < sc.pfps.size(); ++p) {
                    if (league_correct.has(p) && delivered[static_cast<std::size_t>(p)].empty()) {
                        v.passed = false;
                        v.detail = sc.pfps.universe.name(p) + " never delivered";
                    }
                }
            }
        }
        rep.verdicts.push_back(v);
    }

    // Cascade realization: once a correct league member delivers v, the
    // ready-for-v senders cover all of L ∖ A by quiescence.
    {
        bool any_delivery = false;
        std::string v0;
        for (int p = 0; p < sc.pfps.size(); ++p) {
            if (league_correct.has(p) && !delivered[static_cast<std::size_t>(p)].empty()) {
                any_delivery = true;
                v0 = delivered[static_cast<std::size_t>(p)][0];
            }
        }
        PropertyVerdict v{"cascade", sender_correct && any_delivery && !trace.truncated, true, ""};
        if (v.applicable) {
            auto it = ready_senders.find(v0);
            ProcSet senders = it == ready_senders.end() ? ProcSet{} : it->second;
            if (!league_correct.subset_of(senders)) {
                v.passed = false;
                v.detail = "ready senders " + sc.pfps.universe.set_to_string(senders) +
                           " do not cover " + sc.pfps.universe.set_to_string(league_correct);
            }
        }
        rep.verdicts.push_back(v);
    }

    // Protocol conformance of the conflicting-values clause: a correct
    // process whose final recorded readys block it with a value different
    // from the one it readied must have gossiped the star message. This is
    // what makes the suite sensitive to that clause being disabled; the
    // deliver-level properties provably are not, since write-once slots keep
    // a stray value's evidence out of every league quorum.
    {
        PropertyVerdict v{"any-conformance", !trace.truncated, true, ""};
        if (v.applicable) {
            for (int p = 0; p < sc.pfps.size() && v.passed; ++p) {
                if (!correct.has(p)) {
                    continue;
                }
                // Replay the write-once recording from this process's inbox.
                std::vector<Slot> recorded(static_cast<std::size_t>(sc.pfps.size()));
                std::string readied;
                bool sent_ready_flag = false;
                bool sent_any = false;
                for (const TraceRecord& r : trace.records) {
                    if (r.process != p) {
                        continue;
                    }
                    if (r.kind == TraceRecord::Kind::Send) {
                        const auto& msg = r.payload.at("message");
                        std::string kind = msg.at("kind").get<std::string>();
                        if (kind == "ready" && !sent_ready_flag) {
                            sent_ready_flag = true;
                            readied = msg.at("value").get<std::string>();
                        } else if (kind == "any") {
                            sent_any = true;
                        }
                    } else if (r.kind == TraceRecord::Kind::DeliverMsg) {
                        const auto& msg = r.payload.at("message");
                        std::string kind = msg.at("kind").get<std::string>();
                        if (kind != "ready" && kind != "any") {
                            continue;
                        }
                        int from = sc.pfps.universe.index(msg.at("sender").get<std::string>());
                        Slot& slot = recorded[static_cast<std::size_t>(from)];
                        if (!slot.set) {
                            slot.set = true;
                            if (kind == "any") {
                                slot.star = true;
                            } else {
                                slot.value = msg.at("value").get<std::string>();
                            }
                        }
                    }
                }
                const Slot& own = recorded[static_cast<std::size_t>(p)];
                if (!sent_ready_flag || sent_any || !own.set || own.star) {
                    continue;
                }
                for (int j = 0; j < sc.pfps.size(); ++j) {
                    const Slot& s = recorded[static_cast<std::size_t>(j)];
                    if (!s.set || s.star || s.value == readied) {
                        continue;
                    }
                    if (blocks(sc.pfps.config(p), matching_senders(recorded, s.value))) {
                        v.passed = false;
                        v.detail = sc.pfps.universe.name(p) + " is blocked by '" + s.value +
                                   "' after readying '" + readied +
                                   "' but never gossiped the star message";
                        break;
                    }
                }
            }
        }
        rep.verdicts.push_back(v);
    }

    rep.verdicts.push_back(check_fairness(trace));
    rep.verdicts.push_back(check_authenticity(trace, sc, correct));
    return rep;
}

CheckReport check_register(const Trace& trace, const Scenario& sc) {
    CheckReport rep;
    rep.truncated = trace.truncated;
    ProcSet faulty = sc.faulty_set();
    if (!tolerated_by(sc.pfps, sc.league, faulty)) {
        rep.precondition_ok = false;
        rep.precondition_detail = "faulty set " + sc.pfps.universe.set_to_string(faulty) +
                                  " is not tolerated by the league";
        return rep;
    }
    ProcSet correct = sc.pfps.universe.full() - faulty;
    ProcSet league_correct = sc.league & correct;
    if (!league_correct.has(sc.writer)) {
        rep.precondition_ok = false;
        rep.precondition_detail = "writer must be correct and in the league";
        return rep;
    }
    for (const ScriptEntry& e : sc.script) {
        if (e.op == ScriptEntry::Op::Read && !league_correct.has(e.process)) {
            rep.precondition_ok = false;
            rep.precondition_detail = "probed readers must be correct and in the league";
            return rep;
        }
    }

    // Reassemble per-process operation intervals from the ordered records.
    std::vector<std::vector<OpRecord>> ops(static_cast<std::size_t>(sc.pfps.size()));
    for (const TraceRecord& r : trace.records) {
        auto& mine = ops[static_cast<std::size_t>(r.process)];
        if (r.kind == TraceRecord::Kind::Invoke) {
            OpRecord op;
            op.invoke_step = r.step;
            op.is_write = r.payload.value("op", "") == "write";
            if (op.is_write) {
                op.written_value = r.payload.at("value").get<std::string>();
            }
            mine.push_back(op);
        } else if (r.kind == TraceRecord::Kind::Output) {
            std::string event = r.payload.value("event", "");
            if (event != "write-return" && event != "read-return") {
                continue;
            }
            for (OpRecord& op : mine) {
                if (!op.returned && op.is_write == (event == "write-return")) {
                    op.returned = true;
                    op.return_step = r.step;
                    op.returned_value = r.payload.at("value").get<std::string>();
                    break;
                }
            }
        }
    }

    // Termination: every invocation by a correct league member returns.
    {
        PropertyVerdict v{"termination", !trace.truncated, true, ""};
        if (v.applicable) {
            for (int p = 0; p < sc.pfps.size(); ++p) {
                if (!league_correct.has(p)) {
                    continue;
                }
                for (const OpRecord& op : ops[static_cast<std::size_t>(p)]) {
                    if (!op.returned) {
                        v.passed = false;
                        v.detail = sc.pfps.universe.name(p) + " has an operation that never returned";
                    }
                }
            }
        }
        rep.verdicts.push_back(v);
    }

    // Validity: a read returns the last completed write, or any write it
    // overlaps with; the empty initial value before any write.
    {
        PropertyVerdict v{"validity", true, true, ""};
        const auto& writes = ops[static_cast<std::size_t>(sc.writer)];
        for (int p = 0; p < sc.pfps.size(); ++p) {
            if (!league_correct.has(p)) {
                continue;
            }
            for (const OpRecord& read : ops[static_cast<std::size_t>(p)]) {
                if (read.is_write || !read.returned) {
                    continue;
                }
                std::string baseline; // ⊥₀
                std::uint64_t baseline_step = 0;
                bool have_baseline = false;
                std::vector<std::string> allowed;
                for (const OpRecord& w : writes) {
                    if (!w.is_write) {
                        continue;
                    }
                    bool precedes = w.returned && w.return_step < read.invoke_step;
                    bool preceded = read.return_step < w.invoke_step;
                    if (precedes) {
                        if (!have_baseline || w.return_step > baseline_step) {
                            baseline = w.written_value;
                            baseline_step = w.return_step;
                            have_baseline = true;
                        }
                    } else if (!preceded) {
                        allowed.push_back(w.written_value); // concurrent
                    }
                }
                allowed.push_back(baseline);
                if (std::find(allowed.begin(), allowed.end(), read.returned_value) ==
                    allowed.end()) {
                    v.passed = false;
                    v.detail = sc.pfps.universe.name(p) + " read '" + read.returned_value +
                               "' which no admissible write produced";
                }
            }
        }
        rep.verdicts.push_back(v);
    }

    // Unforgeability: every verifying write/value signature in the trace
    // corresponds to a tuple the writer actually signed.
    {
        PropertyVerdict v{"unforgeability", true, true, ""};
        MockSignatureScheme sigs;
        const std::string writer_name = sc.pfps.universe.name(sc.writer);
        // The tuples the writer really signed: the conventional initial one
        // plus one per dispatched write invocation, in trace order.
        std::set<std::pair<std::uint64_t, std::string>> legit;
        legit.emplace(0, "");
        std::uint64_t ts = 0;
        for (const TraceRecord& r : trace.records) {
            if (r.kind == TraceRecord::Kind::Invoke && r.process == sc.writer &&
                r.payload.value("op", "") == "write") {
                legit.emplace(++ts, r.payload.at("value").get<std::string>());
            }
        }
        for (const TraceRecord& r : trace.records) {
            if (r.kind != TraceRecord::Kind::Send) {
                continue;
            }
            const auto& msg = r.payload.at("message");
            std::string kind = msg.at("kind").get<std::string>();
            if (kind != "write" && kind != "value") {
                continue;
            }
            std::uint64_t mts = msg.at("ts").get<std::uint64_t>();
            std::string val = msg.at("value").get<std::string>();
            std::string sig = msg.at("sig").get<std::string>();
            if (sigs.verify(writer_name, sig, write_bytes(writer_name, mts, val)) &&
                legit.find({mts, val}) == legit.end()) {
                v.passed = false;
                v.detail = "trace carries a verifying signature the writer never produced";
            }
        }
        rep.verdicts.push_back(v);
    }

    rep.verdicts.push_back(check_fairness(trace));
    rep.verdicts.push_back(check_authenticity(trace, sc, correct));
    return rep;
}

// Sweep ------------------------------------------------------------------------------

void SweepReport::merge(const SweepReport& other) {
    runs += other.runs;
    passed += other.passed;
    skipped_untolerated += other.skipped_untolerated;
    truncated += other.truncated;
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

SweepReport sweep(const Scenario& base, const std::vector<FaultyAssignment>& assignments,
                  const std::vector<std::uint64_t>& seeds) {
    // Runs share no mutable state, so they parallelize across assignments;
    // the reports are merged in assignment order regardless of which thread
    // finished first.
    std::vector<SweepReport> partial(assignments.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= assignments.size()) {
                return;
            }
            const FaultyAssignment& fa = assignments[i];
            SweepReport& report = partial[i];
            Scenario sc = base;
            sc.faulty = fa.behaviors;
            if (!tolerated_by(sc.pfps, sc.league, sc.faulty_set())) {
                ++report.skipped_untolerated;
                continue;
            }
            for (std::uint64_t seed : seeds) {
                sc.seed = seed;
                sc.name = base.name + "/" + fa.label;
                Trace trace = run(sc);
                CheckReport check = sc.protocol == Scenario::Protocol::Broadcast
                                        ? check_broadcast(trace, sc)
                                        : check_register(trace, sc);
                ++report.runs;
                if (trace.truncated) {
                    ++report.truncated;
                }
                bool ok = check.precondition_ok && check.all_passed();
                if (ok) {
                    ++report.passed;
                } else {
                    for (const PropertyVerdict& v : check.verdicts) {
                        if (v.applicable && !v.passed) {
                            report.violations.push_back(
                                SweepViolation{sc.name, seed, v.property, v.detail});
                        }
                    }
                    if (!check.precondition_ok) {
                        report.violations.push_back(SweepViolation{sc.name, seed, "precondition",
                                                                   check.precondition_detail});
                    }
                }
            }
        }
    };
    unsigned threads = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                                          static_cast<unsigned>(assignments.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    SweepReport report;
    for (const SweepReport& p : partial) {
        report.merge(p);
    }
    return report;
}

} // namespace quorumlace
