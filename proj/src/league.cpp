#include "quorumlace/league.hpp"

#include <algorithm>
#include <unordered_map>

namespace quorumlace {

namespace {

void check_capacity(const Pfps& f, int capacity, const char* what) {
    if (f.size() > capacity) {
        throw CapacityError(std::string(what) + ": universe of " + std::to_string(f.size()) +
                            " processes exceeds the exhaustive-search bound of " +
                            std::to_string(capacity) +
                            "; raise the capacity or analyze a sampled sub-universe");
    }
}

// Literal re-validation of a reported consistency counterexample.
bool consistency_counterexample_valid(const Pfps& f, const ConsistencyCounterexample& cx,
                                      ProcSet l) {
    if (!tolerated_by(f, l, cx.tolerated)) {
        return false;
    }
    if (!(l - cx.tolerated).has(cx.root_i) || !(l - cx.tolerated).has(cx.root_j)) {
        return false;
    }
    auto inclusive_rooted = [&](int root, ProcSet s) {
        if (!has_slice_in(f.config(root), s)) {
            return false;
        }
        for (int j = 0; j < f.size(); ++j) {
            if (s.has(j) && !cx.tolerated.has(j) && !has_slice_in(f.config(j), s)) {
                return false;
            }
        }
        return true;
    };
    return inclusive_rooted(cx.root_i, cx.set_i) && inclusive_rooted(cx.root_j, cx.set_j) &&
           ((cx.set_i & cx.set_j) - cx.tolerated).empty();
}

} // namespace

std::vector<ProcSet> tolerated_sets(const Pfps& f, ProcSet l, int capacity,
                                    bool include_vacuous) {
    check_capacity(f, capacity, "tolerated_sets");
    int n = f.size();
    std::vector<ProcSet> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        ProcSet t(bits);
        if (!include_vacuous && (l - t).empty()) {
            continue;
        }
        if (tolerated_by(f, l, t)) {
            out.push_back(t);
        }
    }
    canonicalize_family(out);
    return out;
}

InclusiveRootedFamily inclusive_rooted_minimal(const Pfps& f, int root, ProcSet t) {
    auto table = slice_table(f);
    InclusiveRootedFamily fam;
    fam.root = root;
    fam.t = t;
    fam.sets = minimal_closed_rooted(table, f.size(), f.config(root), t);
    return fam;
}

ConsistencyResult check_consistency(const Pfps& f, ProcSet l, int capacity) {
    check_capacity(f, capacity, "check_consistency");
    int n = f.size();
    for (ProcSet t : tolerated_sets(f, l, capacity)) {
        ProcSet roots = l - t;
        std::vector<std::vector<ProcSet>> fams(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            if (roots.has(i)) {
                fams[static_cast<std::size_t>(i)] = inclusive_rooted_minimal(f, i, t).sets;
            }
        }
        for (int i = 0; i < n; ++i) {
            if (!roots.has(i)) {
                continue;
            }
            for (int j = i; j < n; ++j) {
                if (!roots.has(j)) {
                    continue;
                }
                for (ProcSet si : fams[static_cast<std::size_t>(i)]) {
                    for (ProcSet sj : fams[static_cast<std::size_t>(j)]) {
                        if (((si & sj) - t).empty()) {
                            ConsistencyCounterexample cx{t, i, j, si, sj};
                            if (!consistency_counterexample_valid(f, cx, l)) {
                                throw ContractError(
                                    "check_consistency produced an unsound counterexample");
                            }
                            return ConsistencyResult{false, cx};
                        }
                    }
                }
            }
        }
    }
    return ConsistencyResult{true, std::nullopt};
}

AvailabilityResult check_availability(const Pfps& f, ProcSet l, int capacity) {
    check_capacity(f, capacity, "check_availability");
    for (ProcSet t : tolerated_sets(f, l, capacity)) {
        ProcSet core = max_closed_subset(f, l - t);
        for (int i = 0; i < f.size(); ++i) {
            if ((l - t).has(i) && !has_slice_in(f.config(i), core)) {
                return AvailabilityResult{false, AvailabilityCounterexample{t, i}};
            }
        }
    }
    return AvailabilityResult{true, std::nullopt};
}

LeagueReport is_league(const Pfps& f, ProcSet l, int capacity) {
    LeagueReport report;
    report.candidate = l;
    report.tolerated = tolerated_sets(f, l, capacity);
    report.consistency = check_consistency(f, l, capacity);
    report.availability = check_availability(f, l, capacity);
    return report;
}

UnionLeagueReport union_preserves_league(const Pfps& f, ProcSet l1, ProcSet l2, int capacity) {
    if (!is_league(f, l1, capacity).is_league() || !is_league(f, l2, capacity).is_league()) {
        throw ContractError("union_preserves_league: both inputs must be leagues");
    }
    UnionLeagueReport out;
    ProcSet common = l1 & l2;
    out.hypothesis_holds = !common.empty();
    if (out.hypothesis_holds) {
        for (ProcSet t : tolerated_sets(f, l1 | l2, capacity)) {
            if ((common - t).empty()) {
                out.hypothesis_holds = false;
                break;
            }
        }
    }
    if (out.hypothesis_holds) {
        out.union_report = is_league(f, l1 | l2, capacity);
        out.union_is_league = out.union_report->is_league();
    }
    return out;
}

std::vector<ProcSet> find_maximal_leagues(const Pfps& f, int capacity) {
    check_capacity(f, capacity, "find_maximal_leagues");
    int n = f.size();
    std::vector<ProcSet> maximal;
    std::unordered_map<std::uint64_t, bool> memo;
    // Descend by size so every found league is maximal among the remainder.
    std::vector<ProcSet> subsets;
    subsets.reserve(std::size_t{1} << n);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        subsets.emplace_back(bits);
    }
    std::sort(subsets.begin(), subsets.end(), [](ProcSet a, ProcSet b) {
        if (a.count() != b.count()) {
            return a.count() > b.count();
        }
        return set_lex_less(a, b);
    });
    for (ProcSet cand : subsets) {
        bool covered = false;
        for (ProcSet m : maximal) {
            if (cand.subset_of(m)) {
                covered = true;
                break;
            }
        }
        if (covered) {
            continue;
        }
        auto it = memo.find(cand.bits);
        bool league = it != memo.end()
                          ? it->second
                          : memo.emplace(cand.bits, is_league(f, cand, capacity).is_league())
                                .first->second;
        if (league) {
            maximal.push_back(cand);
        }
    }
    canonicalize_family(maximal);
    return maximal;
}

} // namespace quorumlace
