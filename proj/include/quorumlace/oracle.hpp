#pragma once

// Brute-force reference checks: exhaustive subset enumeration evaluating
// each definition literally, with no shortcuts shared with the main
// implementation. Everything here is exponential and intended for small
// universes (the fuzz harness and the test suites).

#include "quorumlace/model.hpp"

namespace quorumlace::oracle {

constexpr int kDefaultBound = 6;

// Greatest-fixpoint evaluation of "the assumptions of p are satisfied"
// when exactly `a` fails: start from everyone-satisfied and repeatedly
// drop processes with no fail-prone set F covering a's intrusion whose
// slice is entirely satisfied.
bool assumptions_satisfied(const Pfps& f, int p, ProcSet a);

// Tolerance via survivor-set existence: some closed-and-rooted set of p
// avoids a entirely.
bool tolerates_by_survivor(const Pfps& f, int p, ProcSet a);

// Every subset S with a slice of p inside and a slice of every member
// inside; minimal members only when minimal_only.
std::vector<ProcSet> closed_rooted_sets(const Pfps& f, int p, bool minimal_only);

// Literal quorum-function filter over all subsets.
std::vector<ProcSet> quorums_literal(const Pfps& f, const View& v, int p);

// All sets inclusive up to t and rooted at `root`, literally.
std::vector<ProcSet> inclusive_rooted_sets(const Pfps& f, int root, ProcSet t,
                                           bool minimal_only);

// All T ⊆ universe tolerated by l, via assumptions_satisfied.
std::vector<ProcSet> tolerated_sets(const Pfps& f, ProcSet l);

// Direct league evaluation: consistency over quorum pairs in worst-case
// views per tolerated T, availability over survivor sets inside l ∖ T.
bool league_consistency_direct(const Pfps& f, ProcSet l);
bool league_availability_direct(const Pfps& f, ProcSet l);
bool is_league_direct(const Pfps& f, ProcSet l);

// Least blocking closure by direct iteration of the definition.
ProcSet blocked_closure_literal(const Pfps& f, ProcSet b);

} // namespace quorumlace::oracle
