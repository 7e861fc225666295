#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quorumlace {

// Errors ----------------------------------------------------------------

// Rejected input (bad configuration data, unparseable files).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition.
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

// An exhaustive enumeration was requested above the configured bound.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Process sets ----------------------------------------------------------

constexpr int kMaxProcesses = 64;

// A subset of the universe, as a bitmask over universe indices.
// Index order is the universe's lexicographic id order, so iterating
// ascending bit indices is the canonical deterministic iteration.
struct ProcSet {
    std::uint64_t bits = 0;

    constexpr ProcSet() = default;
    constexpr explicit ProcSet(std::uint64_t b) : bits(b) {}

    static constexpr ProcSet single(int i) { return ProcSet(std::uint64_t{1} << i); }
    static constexpr ProcSet first_n(int n) {
        return n >= 64 ? ProcSet(~std::uint64_t{0}) : ProcSet((std::uint64_t{1} << n) - 1);
    }

    bool has(int i) const { return (bits >> i) & 1; }
    void add(int i) { bits |= std::uint64_t{1} << i; }
    void remove(int i) { bits &= ~(std::uint64_t{1} << i); }
    bool empty() const { return bits == 0; }
    int count() const { return __builtin_popcountll(bits); }
    int lowest() const { return __builtin_ctzll(bits); } // only if !empty()

    bool subset_of(ProcSet o) const { return (bits & ~o.bits) == 0; }
    bool proper_subset_of(ProcSet o) const { return subset_of(o) && bits != o.bits; }
    bool intersects(ProcSet o) const { return (bits & o.bits) != 0; }

    friend ProcSet operator&(ProcSet a, ProcSet b) { return ProcSet(a.bits & b.bits); }
    friend ProcSet operator|(ProcSet a, ProcSet b) { return ProcSet(a.bits | b.bits); }
    friend ProcSet operator-(ProcSet a, ProcSet b) { return ProcSet(a.bits & ~b.bits); }
    friend bool operator==(ProcSet a, ProcSet b) { return a.bits == b.bits; }
    friend bool operator!=(ProcSet a, ProcSet b) { return a.bits != b.bits; }
};

// Sequence-lexicographic order on sets of indices ({p1,p2} < {p2}, prefix first).
bool set_lex_less(ProcSet a, ProcSet b);

// Canonical family order: by size, then sequence-lexicographic.
bool family_order_less(ProcSet a, ProcSet b);

// Sorts canonically and drops duplicates.
void canonicalize_family(std::vector<ProcSet>& family);

// Keeps only the inclusion-minimal members, canonically ordered.
void minimalize_family(std::vector<ProcSet>& family);

// The universe -----------------------------------------------------------

// The finite configured portion of the process space. Ids are held in
// lexicographic order; a process's index is its rank in that order.
class Universe {
  public:
    Universe() = default;
    explicit Universe(std::vector<std::string> ids);

    int size() const { return static_cast<int>(ids_.size()); }
    const std::string& name(int i) const { return ids_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& names() const { return ids_; }
    int index(const std::string& id) const;          // throws InputError if unknown
    std::optional<int> try_index(const std::string& id) const;
    ProcSet full() const { return ProcSet::first_n(size()); }

    ProcSet parse_set(const std::vector<std::string>& ids) const;
    std::vector<std::string> set_names(ProcSet s) const;
    std::string set_to_string(ProcSet s) const; // "{p1,p2}"

    friend bool operator==(const Universe& a, const Universe& b) { return a.ids_ == b.ids_; }

  private:
    std::vector<std::string> ids_;
};

// Configurations ---------------------------------------------------------

// One process's trust assumption: a trusted set and a fail-prone system
// over it. Always normalized: the fail-prone family is an antichain of
// subsets of the trusted set ({∅} when the process assumes no failures).
struct Configuration {
    ProcSet trusted;
    std::vector<ProcSet> fail_prone;

    // Empty configuration (∅, {∅}) — what a worst-case view advertises.
    static Configuration empty_config() { return Configuration{ProcSet{}, {ProcSet{}}}; }

    std::vector<ProcSet> slices() const;
    // True when some fail-prone set equals the whole trusted set, i.e. the
    // process owns an empty slice. Such a process is blocked by anything.
    bool degenerate() const;

    friend bool operator==(const Configuration& a, const Configuration& b) {
        return a.trusted == b.trusted && a.fail_prone == b.fail_prone;
    }
};

// Enforces the configuration invariants on raw input: intersects every
// fail-prone set with the trusted set, drops supersets, sorts canonically.
// An empty fail-prone family becomes {∅}. Throws InputError on empty trusted.
Configuration normalize_config(ProcSet trusted, std::vector<ProcSet> raw_fail_prone);

// A total assignment of configurations over the universe.
struct Pfps {
    Universe universe;
    std::vector<Configuration> configs;

    int size() const { return universe.size(); }
    const Configuration& config(int i) const { return configs.at(static_cast<std::size_t>(i)); }
};

// A partial assignment: one optional entry per process. An unset entry is
// an unknown entry — the process has not been heard from.
struct View {
    std::vector<std::optional<Configuration>> entries;

    static View bottom(int n) { return View{std::vector<std::optional<Configuration>>(static_cast<std::size_t>(n))}; }
    static View full(const Pfps& f);

    bool known(int i) const { return entries.at(static_cast<std::size_t>(i)).has_value(); }
    const Configuration& config(int i) const { return *entries.at(static_cast<std::size_t>(i)); }
    void set(int i, Configuration c) { entries.at(static_cast<std::size_t>(i)) = std::move(c); }
    ProcSet domain() const;
};

// Model-core operations ----------------------------------------------------

// True iff some slice of the configuration is contained in s.
bool has_slice_in(const Configuration& c, ProcSet s);

// Greatest M ⊆ s such that every member of M outside `exempt` with a known
// configuration has a slice in M. Unknown entries impose no constraint.
// Monotone in s and idempotent; ∅ is always closed.
ProcSet max_closed_subset(const Pfps& f, ProcSet s, ProcSet exempt = {});
ProcSet max_closed_subset(const Pfps& f, const View& v, ProcSet s, ProcSet exempt = {});

// Minimal survivor sets of p (include_all=false), or every closed-and-rooted
// set (include_all=true): the sets in which p has a slice and every member
// has a slice.
std::vector<ProcSet> survivor_sets(const Pfps& f, int p, bool include_all = false);

// Whether p's assumptions hold when exactly the set a fails: p has a slice
// in the greatest self-supporting subset of the complement.
bool tolerates(const Pfps& f, int p, ProcSet a);

// Whether every member of l outside a tolerates a.
bool tolerated_by(const Pfps& f, ProcSet l, ProcSet a);

// Quorum function: q is a quorum for p in view v iff p has a slice in q and
// every member of q with a known entry has a slice in q. p's own entry must
// be known (a process always knows its own configuration).
bool is_quorum(const Pfps& f, const View& v, int p, ProcSet q);

// All quorums of p in v, or only the inclusion-minimal ones.
std::vector<ProcSet> quorums(const Pfps& f, const View& v, int p, bool minimal_only);

// Whether s contains some quorum for p in v. Equivalent to p having a slice
// in the greatest closed subset of s. This is the guard form used by the
// protocols ("received messages from all processes in a quorum").
bool contains_quorum(const Pfps& f, const View& v, int p, ProcSet s);

// View with truthful entries outside t and the empty configuration for
// members of t. Always t-resilient.
View worst_case_view(const Pfps& f, ProcSet t);

// Whether every entry outside t is either unknown or truthful.
bool is_resilient(const Pfps& f, const View& v, ProcSet t);

// Whether b intersects every slice of the configuration. A degenerate
// configuration (some empty slice) is blocked by every set.
bool blocks(const Configuration& c, ProcSet b);

// Least superset of b closed under blocking: repeatedly adds every process
// blocked by the current set.
ProcSet blocked_closure(const Pfps& f, ProcSet b);

// Internal engine shared with views: per-index configuration pointers,
// nullptr meaning ⊥.
std::vector<const Configuration*> slice_table(const Pfps& f);
std::vector<const Configuration*> slice_table(const View& v);
ProcSet max_closed_subset_table(const std::vector<const Configuration*>& table, ProcSet s,
                                ProcSet exempt);

// Minimal sets I ⊆ universe such that `root`'s slice requirement holds in I
// and every member of I outside `exempt` (with a known entry) has a slice
// in I. This is the shared engine behind minimal quorums, minimal survivor
// sets and minimal inclusive/rooted sets.
std::vector<ProcSet> minimal_closed_rooted(const std::vector<const Configuration*>& table, int n,
                                           const Configuration& root_config, ProcSet exempt);

} // namespace quorumlace
