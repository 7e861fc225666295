#pragma once

#include "quorumlace/model.hpp"
#include "quorumlace/rng.hpp"

#include <string>
#include <vector>

namespace quorumlace::fuzz {

struct Violation {
    std::string property;
    std::string detail;
};

using Violations = std::vector<Violation>;

// A random permissionless fail-prone system over n processes. Trusted sets
// always contain their owner; one to three fail-prone sets each, with a
// small chance of a degenerate (whole-trusted-set) entry.
Pfps random_pfps(int n, Rng& rng);

// A random global antichain for the symmetric bridge checks.
std::vector<ProcSet> random_antichain(int n, Rng& rng);

// Hand-picked instances run before the random ones. They pin down the cases
// that separate the real checks from weakened variants (notably an instance
// whose only consistency violations sit inside the tolerated set).
std::vector<Pfps> crafted_instances();
const Pfps& t_masked_inconsistency_instance(); // crafted_instances()[2]

Violations check_tolerance(const Pfps& f);
Violations check_survivor_quorums(const Pfps& f);
Violations check_worst_case_quorums(const Pfps& f, Rng& rng);
Violations check_league_characterization(const Pfps& f, Rng& rng);
Violations check_blocked_closure(const Pfps& f, Rng& rng);
Violations check_personal_quorums(const Pfps& f);
Violations check_cascade(const Pfps& f, Rng& rng);
Violations check_classic_equivalence(int n, Rng& rng);

struct FuzzOptions {
    int processes = 5;
    int instances = 100;
    std::uint64_t seed = 42;
    std::vector<std::string> properties; // empty = every property
};

struct FuzzFinding {
    std::string instance; // canonical config rendering, for replay
    Violation violation;
};

struct FuzzReport {
    int instances = 0;
    int checks = 0;
    std::vector<FuzzFinding> findings;

    bool clean() const { return findings.empty(); }
};

extern const std::vector<std::string> kAllProperties;

FuzzReport run_fuzz(const FuzzOptions& options);

} // namespace quorumlace::fuzz
