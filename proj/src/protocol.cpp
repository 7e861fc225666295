#include "quorumlace/protocol.hpp"

#include <algorithm>
#include <set>

namespace quorumlace {

const char* msg_kind_name(MsgKind k) {
    switch (k) {
    case MsgKind::Send: return "send";
    case MsgKind::Echo: return "echo";
    case MsgKind::Ready: return "ready";
    case MsgKind::Any: return "any";
    case MsgKind::Write: return "write";
    case MsgKind::Ack: return "ack";
    case MsgKind::Read: return "read";
    case MsgKind::Value: return "value";
    }
    return "?";
}

bool ProtocolMessage::validate(int universe_size, std::string* reason) const {
    auto fail = [&](const char* why) {
        if (reason) {
            *reason = why;
        }
        return false;
    };
    if (sender < 0 || sender >= universe_size) {
        return fail("sender out of range");
    }
    switch (kind) {
    case MsgKind::Send:
    case MsgKind::Echo:
    case MsgKind::Ready:
        if (star) {
            return fail("value-bearing message carries the star marker");
        }
        return true;
    case MsgKind::Any:
        if (!star || !value.empty()) {
            return fail("any message must carry the star marker and no value");
        }
        return true;
    case MsgKind::Write:
        if (signature.empty()) {
            return fail("write without signature");
        }
        return true;
    case MsgKind::Ack:
        return true;
    case MsgKind::Read:
        return true;
    case MsgKind::Value:
        if (signature.empty()) {
            return fail("value without signature");
        }
        return true;
    }
    return fail("unknown kind");
}

// Signatures ----------------------------------------------------------------

namespace {

std::uint64_t fnv64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

} // namespace

std::string MockSignatureScheme::sign(const std::string& signer, const std::string& bytes) const {
    return "sig:" + signer + ":" + hex64(fnv64(signer + "\x1f" + bytes));
}

bool MockSignatureScheme::verify(const std::string& signer, const std::string& token,
                                 const std::string& bytes) const {
    return token == sign(signer, bytes);
}

std::string write_bytes(const std::string& writer, std::uint64_t ts, const std::string& value) {
    return "write|" + writer + "|" + std::to_string(ts) + "|" + value;
}

// Shared guard helpers ---------------------------------------------------------

ProcSet matching_senders(const std::vector<Slot>& slots, const std::string& value) {
    ProcSet s;
    for (int j = 0; j < static_cast<int>(slots.size()); ++j) {
        const Slot& slot = slots[static_cast<std::size_t>(j)];
        if (slot.set && !slot.star && slot.value == value) {
            s.add(j);
        }
    }
    return s;
}

bool evaluate_quorum_guard(const std::vector<Slot>& slots, const std::string& value,
                           const Configuration& own, const View& view) {
    ProcSet m = max_closed_subset_table(slice_table(view), matching_senders(slots, value),
                                        ProcSet{});
    return has_slice_in(own, m);
}

namespace {

bool set_contains_quorum(const View& view, const Configuration& own, ProcSet s) {
    ProcSet m = max_closed_subset_table(slice_table(view), s, ProcSet{});
    return has_slice_in(own, m);
}

std::vector<std::string> distinct_values(const std::vector<Slot>& slots) {
    std::set<std::string> vals;
    for (const Slot& s : slots) {
        if (s.set && !s.star) {
            vals.insert(s.value);
        }
    }
    return {vals.begin(), vals.end()};
}

} // namespace

// Broadcast ----------------------------------------------------------------------

BroadcastState BroadcastState::make(int self, int sender, int n, Configuration own) {
    BroadcastState st;
    st.self = self;
    st.sender = sender;
    st.n = n;
    st.own_config = own;
    st.view = View::bottom(n);
    st.view.set(self, std::move(own));
    st.echos.resize(static_cast<std::size_t>(n));
    st.readys.resize(static_cast<std::size_t>(n));
    return st;
}

namespace {

ProtocolMessage make_value_msg(MsgKind kind, int sender, std::string value,
                               const Configuration& config) {
    ProtocolMessage m;
    m.kind = kind;
    m.sender = sender;
    m.value = std::move(value);
    m.config = config;
    return m;
}

// Runs the upon-exists guards in clause order until none fires.
void run_broadcast_guards(BroadcastState& st, std::vector<Action>& out) {
    bool fired = true;
    while (fired) {
        fired = false;

        // quorum of echos for one value -> ready
        if (!st.sent_ready) {
            for (const std::string& v : distinct_values(st.echos)) {
                if (evaluate_quorum_guard(st.echos, v, st.own_config, st.view)) {
                    st.sent_ready = true;
                    out.push_back({Action::Kind::Gossip,
                                   make_value_msg(MsgKind::Ready, st.self, v, st.own_config),
                                   -1,
                                   {}});
                    fired = true;
                    break;
                }
            }
        }
        if (fired) {
            continue;
        }

        // blocking set of readys for one value -> ready (amplification)
        if (!st.sent_ready) {
            for (const std::string& v : distinct_values(st.readys)) {
                if (blocks(st.own_config, matching_senders(st.readys, v))) {
                    st.sent_ready = true;
                    out.push_back({Action::Kind::Gossip,
                                   make_value_msg(MsgKind::Ready, st.self, v, st.own_config),
                                   -1,
                                   {}});
                    fired = true;
                    break;
                }
            }
        }
        if (fired) {
            continue;
        }

        // blocked by a value conflicting with the one we readied -> any
        if (st.any_clause_enabled && st.sent_ready && !st.sent_any) {
            const Slot& own = st.readys[static_cast<std::size_t>(st.self)];
            if (own.set && !own.star) {
                for (const std::string& v2 : distinct_values(st.readys)) {
                    if (v2 != own.value &&
                        blocks(st.own_config, matching_senders(st.readys, v2))) {
                        st.sent_any = true;
                        ProtocolMessage m;
                        m.kind = MsgKind::Any;
                        m.sender = st.self;
                        m.star = true;
                        m.config = st.own_config;
                        out.push_back({Action::Kind::Gossip, std::move(m), -1, {}});
                        fired = true;
                        break;
                    }
                }
            }
        }
        if (fired) {
            continue;
        }

        // quorum of readys for one value -> deliver
        if (!st.delivered) {
            for (const std::string& v : distinct_values(st.readys)) {
                if (evaluate_quorum_guard(st.readys, v, st.own_config, st.view)) {
                    st.delivered = true;
                    out.push_back({Action::Kind::Deliver, {}, -1, v});
                    fired = true;
                    break;
                }
            }
        }
    }
}

} // namespace

std::vector<Action> rb_step(BroadcastState& st, const RbEvent& event) {
    std::vector<Action> out;

    if (const auto* invoke = std::get_if<RbBroadcastInvoke>(&event)) {
        if (st.self != st.sender) {
            throw ContractError("r-broadcast invoked at a process other than the sender");
        }
        if (!st.sent_send) {
            st.sent_send = true;
            out.push_back({Action::Kind::Gossip,
                           make_value_msg(MsgKind::Send, st.self, invoke->value, st.own_config),
                           -1,
                           {}});
        }
    } else if (const auto* ev = std::get_if<RbMessage>(&event)) {
        const ProtocolMessage& m = ev->msg;
        std::string reason;
        if (!m.validate(st.n, &reason)) {
            ++st.dropped;
            run_broadcast_guards(st, out);
            return out;
        }
        switch (m.kind) {
        case MsgKind::Send:
            if (m.sender == st.sender && !st.sent_echo) {
                st.sent_echo = true;
                st.view.set(m.sender, m.config);
                out.push_back({Action::Kind::Gossip,
                               make_value_msg(MsgKind::Echo, st.self, m.value, st.own_config),
                               -1,
                               {}});
            }
            break;
        case MsgKind::Echo: {
            Slot& slot = st.echos[static_cast<std::size_t>(m.sender)];
            if (!slot.set) {
                st.view.set(m.sender, m.config);
                slot.set = true;
                slot.value = m.value;
            }
            break;
        }
        case MsgKind::Ready: {
            Slot& slot = st.readys[static_cast<std::size_t>(m.sender)];
            if (!slot.set) {
                st.view.set(m.sender, m.config);
                slot.set = true;
                slot.value = m.value;
            }
            break;
        }
        case MsgKind::Any: {
            // The view keeps the most recently received configuration; the
            // ready slot stays write-once.
            st.view.set(m.sender, m.config);
            Slot& slot = st.readys[static_cast<std::size_t>(m.sender)];
            if (!slot.set) {
                slot.set = true;
                slot.star = true;
            }
            break;
        }
        default:
            ++st.dropped; // register traffic is not ours
            break;
        }
    }

    run_broadcast_guards(st, out);
    return out;
}

// Register ------------------------------------------------------------------------

RegisterState RegisterState::make(int self, int writer, int n, Configuration own,
                                  const std::string& writer_name, const SignatureScheme* sigs) {
    RegisterState st;
    st.self = self;
    st.writer = writer;
    st.n = n;
    st.writer_name = writer_name;
    st.own_config = own;
    st.view = View::bottom(n);
    st.view.set(self, std::move(own));
    st.sigs = sigs;
    // Initial tuple: timestamp 0, the initial value, and the conventional
    // signature every process can check, so reads before any write return.
    st.stored_sig = sigs->sign(writer_name, write_bytes(writer_name, 0, ""));
    st.replies.resize(static_cast<std::size_t>(n));
    return st;
}

namespace {

void check_write_return(RegisterState& st, std::vector<Action>& out) {
    if (st.write_active && set_contains_quorum(st.view, st.own_config, st.ack_senders)) {
        st.write_active = false;
        out.push_back({Action::Kind::WriteReturn, {}, -1, st.pending_write_value});
    }
}

void check_read_return(RegisterState& st, std::vector<Action>& out) {
    if (!st.read_active) {
        return;
    }
    ProcSet responders;
    for (int j = 0; j < st.n; ++j) {
        if (st.replies[static_cast<std::size_t>(j)].set) {
            responders.add(j);
        }
    }
    ProcSet quorum = max_closed_subset_table(slice_table(st.view), responders, ProcSet{});
    if (!has_slice_in(st.own_config, quorum)) {
        return;
    }
    std::vector<std::pair<std::uint64_t, std::string>> pairs;
    for (int j = 0; j < st.n; ++j) {
        if (quorum.has(j) && st.replies[static_cast<std::size_t>(j)].set) {
            pairs.emplace_back(st.replies[static_cast<std::size_t>(j)].ts,
                               st.replies[static_cast<std::size_t>(j)].value);
        }
    }
    st.read_active = false;
    out.push_back({Action::Kind::ReadReturn, {}, -1, highestval(pairs)});
}

} // namespace

std::vector<Action> reg_step(RegisterState& st, const RegEvent& event) {
    std::vector<Action> out;

    if (const auto* w = std::get_if<RegWriteInvoke>(&event)) {
        if (st.self != st.writer) {
            throw ContractError("write invoked at a process other than the designated writer");
        }
        if (st.write_active || st.read_active) {
            throw ContractError("register operations must be sequential per process");
        }
        st.write_ts += 1;
        st.write_active = true;
        st.pending_write_value = w->value;
        st.ack_senders = ProcSet{};
        ProtocolMessage m;
        m.kind = MsgKind::Write;
        m.sender = st.self;
        m.timestamp = st.write_ts;
        m.value = w->value;
        m.signature = st.sigs->sign(st.writer_name, write_bytes(st.writer_name, st.write_ts, w->value));
        m.config = st.own_config;
        out.push_back({Action::Kind::Gossip, std::move(m), -1, {}});
        return out;
    }

    if (std::get_if<RegReadInvoke>(&event) != nullptr) {
        if (st.write_active || st.read_active) {
            throw ContractError("register operations must be sequential per process");
        }
        st.read_id += 1;
        st.read_active = true;
        st.active_read_id = st.read_id;
        std::fill(st.replies.begin(), st.replies.end(), RegisterState::Reply{});
        ProtocolMessage m;
        m.kind = MsgKind::Read;
        m.sender = st.self;
        m.read_id = st.read_id;
        m.config = st.own_config;
        out.push_back({Action::Kind::Gossip, std::move(m), -1, {}});
        return out;
    }

    const ProtocolMessage& m = std::get<RegMessage>(event).msg;
    std::string reason;
    if (!m.validate(st.n, &reason)) {
        ++st.dropped;
        return out;
    }
    switch (m.kind) {
    case MsgKind::Write: {
        if (m.sender != st.writer) {
            ++st.dropped;
            break;
        }
        if (m.timestamp > st.stored_ts) {
            st.view.set(st.writer, m.config);
            st.stored_ts = m.timestamp;
            st.stored_value = m.value;
            st.stored_sig = m.signature;
        }
        // Ack unconditionally, stale timestamps included.
        ProtocolMessage ack;
        ack.kind = MsgKind::Ack;
        ack.sender = st.self;
        ack.config = st.own_config;
        out.push_back({Action::Kind::GossipTo, std::move(ack), st.writer, {}});
        break;
    }
    case MsgKind::Ack:
        if (st.self == st.writer) {
            st.view.set(m.sender, m.config);
            if (st.write_active) {
                st.ack_senders.add(m.sender);
                check_write_return(st, out);
            }
        }
        break;
    case MsgKind::Read: {
        st.view.set(m.sender, m.config);
        ProtocolMessage reply;
        reply.kind = MsgKind::Value;
        reply.sender = st.self;
        reply.read_id = m.read_id;
        reply.timestamp = st.stored_ts;
        reply.value = st.stored_value;
        reply.signature = st.stored_sig;
        reply.config = st.own_config;
        out.push_back({Action::Kind::GossipTo, std::move(reply), m.sender, {}});
        break;
    }
    case MsgKind::Value: {
        if (!st.read_active || m.read_id != st.active_read_id) {
            break; // stale read id
        }
        if (!st.sigs->verify(st.writer_name, m.signature,
                             write_bytes(st.writer_name, m.timestamp, m.value))) {
            ++st.dropped;
            break;
        }
        RegisterState::Reply& r = st.replies[static_cast<std::size_t>(m.sender)];
        if (!r.set) {
            r.set = true;
            r.ts = m.timestamp;
            r.value = m.value;
            st.view.set(m.sender, m.config);
            check_read_return(st, out);
        }
        break;
    }
    default:
        ++st.dropped;
        break;
    }
    return out;
}

std::string highestval(const std::vector<std::pair<std::uint64_t, std::string>>& pairs) {
    if (pairs.empty()) {
        throw ContractError("highestval on empty input");
    }
    std::uint64_t best_ts = 0;
    const std::string* best = nullptr;
    for (const auto& [ts, value] : pairs) {
        if (best == nullptr || ts > best_ts || (ts == best_ts && value < *best)) {
            best_ts = ts;
            best = &value;
        }
    }
    return *best;
}

} // namespace quorumlace
