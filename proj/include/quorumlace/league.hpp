#pragma once

#include "quorumlace/model.hpp"

#include <optional>

namespace quorumlace {

// Exhaustive league checking is exponential in the universe; requests over
// this bound are rejected unless the caller raises it.
constexpr int kDefaultLeagueCapacity = 20;

struct ConsistencyCounterexample {
    ProcSet tolerated;
    int root_i = -1;
    int root_j = -1;
    ProcSet set_i;
    ProcSet set_j;
};

struct AvailabilityCounterexample {
    ProcSet tolerated;
    int process = -1;
};

struct ConsistencyResult {
    bool holds = false;
    std::optional<ConsistencyCounterexample> counterexample;
};

struct AvailabilityResult {
    bool holds = false;
    std::optional<AvailabilityCounterexample> counterexample;
};

struct LeagueReport {
    ProcSet candidate;
    std::vector<ProcSet> tolerated;
    ConsistencyResult consistency;
    AvailabilityResult availability;

    bool is_league() const { return consistency.holds && availability.holds; }
};

// Minimal sets inclusive up to t and rooted at root. Members of t inside a
// set carry no slice requirement.
struct InclusiveRootedFamily {
    int root = -1;
    ProcSet t;
    std::vector<ProcSet> sets;
};

// All T ⊆ universe tolerated by l, in canonical (size, lexicographic) order.
// Sets with l ⊆ T are tolerated only vacuously (nobody's assumptions are
// exercised) and constrain no league property; they are omitted unless
// include_vacuous is set. Throws CapacityError when the universe exceeds
// `capacity`.
std::vector<ProcSet> tolerated_sets(const Pfps& f, ProcSet l,
                                    int capacity = kDefaultLeagueCapacity,
                                    bool include_vacuous = false);

InclusiveRootedFamily inclusive_rooted_minimal(const Pfps& f, int root, ProcSet t);

// Consistency: every pair of inclusive/rooted sets of members of l outside a
// tolerated T intersects outside T. Checking minimal sets suffices since
// intersections only grow on supersets. The first violation in enumeration
// order is returned and re-validated against the raw definitions.
ConsistencyResult check_consistency(const Pfps& f, ProcSet l,
                                    int capacity = kDefaultLeagueCapacity);

// Availability: every member of l outside a tolerated T has a slice in the
// greatest self-supporting subset of l ∖ T.
AvailabilityResult check_availability(const Pfps& f, ProcSet l,
                                      int capacity = kDefaultLeagueCapacity);

LeagueReport is_league(const Pfps& f, ProcSet l, int capacity = kDefaultLeagueCapacity);

struct UnionLeagueReport {
    bool hypothesis_holds = false; // some common member outside every tolerated T
    bool union_is_league = false;  // meaningful only when hypothesis_holds
    std::optional<LeagueReport> union_report;
};

// Checks whether the union of two overlapping leagues is again a league.
// Both inputs must already be leagues
// (ContractError otherwise). When the hypothesis fails nothing is asserted
// about the union.
UnionLeagueReport union_preserves_league(const Pfps& f, ProcSet l1, ProcSet l2,
                                         int capacity = kDefaultLeagueCapacity);

// All subset-maximal leagues, in canonical order. The empty set is itself a
// (vacuous) league, so the result is never empty.
std::vector<ProcSet> find_maximal_leagues(const Pfps& f,
                                          int capacity = kDefaultLeagueCapacity);

} // namespace quorumlace
