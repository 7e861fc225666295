#pragma once

#include "quorumlace/model.hpp"

#include <string>
#include <variant>
#include <vector>

namespace quorumlace {

// Messages -----------------------------------------------------------------

enum class MsgKind { Send, Echo, Ready, Any, Write, Ack, Read, Value };

const char* msg_kind_name(MsgKind k);

// One gossiped message. Every kind carries the sender's advertised
// configuration; the other fields are kind-specific (see validate()).
struct ProtocolMessage {
    MsgKind kind = MsgKind::Send;
    int sender = -1;
    std::string value;            // send/echo/ready/write/value
    bool star = false;            // any
    std::uint64_t timestamp = 0;  // write/value
    std::uint64_t read_id = 0;    // read/value
    std::string signature;        // write/value
    Configuration config;

    bool validate(int universe_size, std::string* reason = nullptr) const;
};

// Signatures ------------------------------------------------------------------

class SignatureScheme {
  public:
    virtual ~SignatureScheme() = default;
    virtual std::string sign(const std::string& signer, const std::string& bytes) const = 0;
    virtual bool verify(const std::string& signer, const std::string& token,
                        const std::string& bytes) const = 0;
};

// Deterministic mock tokens. Unforgeability is an environmental assumption:
// the simulator only hands Byzantine behaviors tokens they legitimately saw.
class MockSignatureScheme final : public SignatureScheme {
  public:
    std::string sign(const std::string& signer, const std::string& bytes) const override;
    bool verify(const std::string& signer, const std::string& token,
                const std::string& bytes) const override;
};

std::string write_bytes(const std::string& writer, std::uint64_t ts, const std::string& value);

// Actions ------------------------------------------------------------------------

struct Action {
    enum class Kind { Gossip, GossipTo, Deliver, WriteReturn, ReadReturn };
    Kind kind;
    ProtocolMessage message; // Gossip/GossipTo
    int target = -1;         // GossipTo
    std::string value;       // Deliver/ReadReturn/WriteReturn
};

// Reliable broadcast (one instance, fixed well-known sender) ----------------------

// A received echo/ready slot: written at most once, ★ only in readys.
struct Slot {
    bool set = false;
    bool star = false;
    std::string value;
};

struct BroadcastState {
    int self = -1;
    int sender = -1;
    int n = 0;
    Configuration own_config;
    View view;

    bool sent_send = false;
    bool sent_echo = false;
    bool sent_ready = false;
    bool sent_any = false;
    bool delivered = false;
    std::vector<Slot> echos;
    std::vector<Slot> readys;

    // Simulator experiment knob: when false the conflicting-values clause
    // never gossips ANY. Used by the mutation smoke tests.
    bool any_clause_enabled = true;

    std::uint64_t dropped = 0; // malformed or out-of-protocol messages

    static BroadcastState make(int self, int sender, int n, Configuration own);
};

struct RbBroadcastInvoke {
    std::string value;
};
struct RbMessage {
    ProtocolMessage msg;
};
struct RbTick {};
using RbEvent = std::variant<RbBroadcastInvoke, RbMessage, RbTick>;

// Applies one event and re-evaluates the guards in clause order until
// quiescent. Pure: identical (state, event) pairs yield identical results.
std::vector<Action> rb_step(BroadcastState& state, const RbEvent& event);

// The matching-sender set for a candidate value; ★ entries never match.
ProcSet matching_senders(const std::vector<Slot>& slots, const std::string& value);

// Guard form of the quorum function: the matching set must contain a quorum
// for self in the current view.
bool evaluate_quorum_guard(const std::vector<Slot>& slots, const std::string& value,
                           const Configuration& own, const View& view);

// SWMR regular register -------------------------------------------------------------

struct RegisterState {
    int self = -1;
    int writer = -1;
    int n = 0;
    std::string writer_name;
    Configuration own_config;
    View view;
    const SignatureScheme* sigs = nullptr;

    std::uint64_t write_ts = 0; // writer's counter
    std::uint64_t read_id = 0;

    std::uint64_t stored_ts = 0;
    std::string stored_value; // ⊥₀ is the empty string
    std::string stored_sig;

    bool write_active = false;
    std::string pending_write_value;
    ProcSet ack_senders;

    bool read_active = false;
    std::uint64_t active_read_id = 0;
    struct Reply {
        bool set = false;
        std::uint64_t ts = 0;
        std::string value;
    };
    std::vector<Reply> replies;

    std::uint64_t dropped = 0;

    static RegisterState make(int self, int writer, int n, Configuration own,
                              const std::string& writer_name, const SignatureScheme* sigs);
};

struct RegWriteInvoke {
    std::string value;
};
struct RegReadInvoke {};
struct RegMessage {
    ProtocolMessage msg;
};
using RegEvent = std::variant<RegWriteInvoke, RegReadInvoke, RegMessage>;

std::vector<Action> reg_step(RegisterState& state, const RegEvent& event);

// Value of the pair with the largest timestamp; ties broken by the
// lexicographically least value. Throws ContractError on empty input.
std::string highestval(const std::vector<std::pair<std::uint64_t, std::string>>& pairs);

} // namespace quorumlace
