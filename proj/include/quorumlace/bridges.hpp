#pragma once

#include "quorumlace/league.hpp"
#include "quorumlace/model.hpp"

#include <optional>

namespace quorumlace {

// Classic (symmetric) fail-prone system: one global antichain; the
// canonical quorum system is the family of complements.
struct SymmetricSystem {
    Universe universe;
    std::vector<ProcSet> fail_prone; // antichain over the full universe

    static SymmetricSystem make(Universe u, std::vector<ProcSet> fp);
    std::vector<ProcSet> canonical_quorums() const;
};

// Asymmetric fail-prone system: one antichain per process, all over the
// full, globally known universe.
struct AsymmetricSystem {
    Universe universe;
    std::vector<std::vector<ProcSet>> fail_prone; // per process

    static AsymmetricSystem make(Universe u, std::vector<std::vector<ProcSet>> fp);
};

// Federated Byzantine agreement system: per-process known set and slices,
// each slice containing its owner.
struct FbasSystem {
    Universe universe;
    std::vector<ProcSet> known;               // P_i
    std::vector<std::vector<ProcSet>> slices; // each slice ∋ owner, ⊆ P_i
};

// Personal Byzantine quorum system: explicit per-process quorum families.
struct PbqsSystem {
    Universe universe;
    std::vector<std::vector<ProcSet>> quorum_families;

    // The PBQS axiom: every quorum of p contains a quorum of each member.
    bool valid(std::string* diagnostic = nullptr) const;
};

struct Q3Result {
    bool holds = false;
    ProcSet witness_f1, witness_f2, witness_f3; // covering triple when !holds
};

// Q³: no three fail-prone sets (with repetition) cover the universe.
Q3Result q3_check(const SymmetricSystem& s);

// Every process gets the same configuration (Π, F).
Pfps f_embed(const SymmetricSystem& s);

struct ClassicEquivalenceResult {
    bool q3 = false;
    bool league = false;
    bool agree = false;
};

// Q³(F) ⇔ Π is a league under the embedded system.
ClassicEquivalenceResult classic_equivalence_harness(const SymmetricSystem& s,
                                int capacity = kDefaultLeagueCapacity);

struct B3Result {
    bool holds = false;
    int witness_i = -1, witness_j = -1;
    ProcSet witness_fi, witness_fj, witness_fij; // covering triple when !holds
};

// B³: for every pair of processes, no F_i ∪ F_j ∪ F_ij covers the universe,
// with F_ij drawn from the intersection of the downward closures.
B3Result b3_check(const AsymmetricSystem& a);

// Process p_i gets configuration (Π, F'_i).
Pfps g_embed(const AsymmetricSystem& a);

struct AsymmetricLeagueResult {
    bool b3 = false;
    bool tolerates_some = false; // some non-vacuous tolerated set exists
    bool league = false;         // Π under g_embed, Def-8 quorum function
    bool holds = false;          // the implication b3 ∧ tolerates_some → league
    bool device_ok = false;      // the {guild, Π} proof-device quorum function
};

AsymmetricLeagueResult asymmetric_league_harness(const AsymmetricSystem& a,
                                int capacity = kDefaultLeagueCapacity);

struct GuildReport {
    ProcSet wise;
    ProcSet naive;
    std::vector<ProcSet> guilds; // all non-empty guilds, canonical order
    ProcSet maximal_guild;       // empty set when no guild exists
};

// Classifies correct processes as wise/naive for the execution with faulty
// set `actual_faulty` and computes the guilds.
GuildReport guild_and_wise(const AsymmetricSystem& a, ProcSet actual_faulty);

// Derives the federated fail-prone system: F_i = {P_i ∖ S : S ∈ slices_i}.
// Rejects slices that do not contain their owner or escape P_i.
Pfps fbas_derive(const FbasSystem& fb);

struct PairWitness {
    int p = -1, q = -1;
    ProcSet quorum_p, quorum_q;
};

struct IntactResult {
    bool intact = false;
    bool degenerate = false; // the empty set, vacuously intact
    std::optional<PairWitness> witness;
};

// Intact set: quorums of members pairwise intersect inside the set, and the
// set is a quorum for each member (full-knowledge view).
IntactResult intact_check(const Pfps& f, ProcSet candidate, ProcSet actual_faulty);

struct ClusterResult {
    bool cluster = false;
    std::optional<PairWitness> witness;
    std::optional<int> unavailable_member;
};

// Consensus cluster: quorum pairs of members meet outside the faulty set
// and every member has a quorum inside the candidate.
ClusterResult consensus_cluster_check(const Pfps& f, ProcSet candidate, ProcSet actual_faulty);

// PBQS quorum property for q: every member of q has a quorum (full view)
// contained in q.
bool pbqs_quorum_check(const Pfps& f, ProcSet q);

} // namespace quorumlace
