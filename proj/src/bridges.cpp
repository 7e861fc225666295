#include "quorumlace/bridges.hpp"

#include <algorithm>

namespace quorumlace {

SymmetricSystem SymmetricSystem::make(Universe u, std::vector<ProcSet> fp) {
    ProcSet full = u.full();
    for (ProcSet& f : fp) {
        f = f & full;
    }
    if (fp.empty()) {
        fp.push_back(ProcSet{});
    }
    minimalize_family(fp);
    return SymmetricSystem{std::move(u), std::move(fp)};
}

std::vector<ProcSet> SymmetricSystem::canonical_quorums() const {
    std::vector<ProcSet> out;
    out.reserve(fail_prone.size());
    for (ProcSet f : fail_prone) {
        out.push_back(universe.full() - f);
    }
    canonicalize_family(out);
    return out;
}

AsymmetricSystem AsymmetricSystem::make(Universe u, std::vector<std::vector<ProcSet>> fp) {
    if (static_cast<int>(fp.size()) != u.size()) {
        throw InputError("asymmetric system needs one fail-prone system per process");
    }
    for (auto& family : fp) {
        if (family.empty()) {
            family.push_back(ProcSet{});
        }
        minimalize_family(family);
    }
    return AsymmetricSystem{std::move(u), std::move(fp)};
}

bool PbqsSystem::valid(std::string* diagnostic) const {
    for (int i = 0; i < universe.size(); ++i) {
        for (ProcSet q : quorum_families[static_cast<std::size_t>(i)]) {
            if (q.empty()) {
                if (diagnostic) {
                    *diagnostic = "empty quorum for " + universe.name(i);
                }
                return false;
            }
            for (int j = 0; j < universe.size(); ++j) {
                if (!q.has(j)) {
                    continue;
                }
                bool found = false;
                for (ProcSet qj : quorum_families[static_cast<std::size_t>(j)]) {
                    if (qj.subset_of(q)) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    if (diagnostic) {
                        *diagnostic = "quorum " + universe.set_to_string(q) + " of " +
                                      universe.name(i) + " contains no quorum for member " +
                                      universe.name(j);
                    }
                    return false;
                }
            }
        }
    }
    return true;
}

Q3Result q3_check(const SymmetricSystem& s) {
    ProcSet full = s.universe.full();
    for (ProcSet f1 : s.fail_prone) {
        for (ProcSet f2 : s.fail_prone) {
            for (ProcSet f3 : s.fail_prone) {
                if (full.subset_of(f1 | f2 | f3)) {
                    return Q3Result{false, f1, f2, f3};
                }
            }
        }
    }
    return Q3Result{true, {}, {}, {}};
}

Pfps f_embed(const SymmetricSystem& s) {
    Pfps out;
    out.universe = s.universe;
    Configuration c = normalize_config(s.universe.full(), s.fail_prone);
    out.configs.assign(static_cast<std::size_t>(s.universe.size()), c);
    return out;
}

ClassicEquivalenceResult classic_equivalence_harness(const SymmetricSystem& s, int capacity) {
    ClassicEquivalenceResult r;
    r.q3 = q3_check(s).holds;
    Pfps f = f_embed(s);
    r.league = is_league(f, f.universe.full(), capacity).is_league();
    r.agree = (r.q3 == r.league);
    return r;
}

B3Result b3_check(const AsymmetricSystem& a) {
    ProcSet full = a.universe.full();
    int n = a.universe.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (ProcSet fi : a.fail_prone[static_cast<std::size_t>(i)]) {
                for (ProcSet fj : a.fail_prone[static_cast<std::size_t>(j)]) {
                    // Maximal common subsets of the two downward closures are
                    // the pairwise intersections; covering is monotone.
                    for (ProcSet gi : a.fail_prone[static_cast<std::size_t>(i)]) {
                        for (ProcSet gj : a.fail_prone[static_cast<std::size_t>(j)]) {
                            ProcSet fij = gi & gj;
                            if (full.subset_of(fi | fj | fij)) {
                                return B3Result{false, i, j, fi, fj, fij};
                            }
                        }
                    }
                }
            }
        }
    }
    return B3Result{true, -1, -1, {}, {}, {}};
}

Pfps g_embed(const AsymmetricSystem& a) {
    Pfps out;
    out.universe = a.universe;
    out.configs.reserve(static_cast<std::size_t>(a.universe.size()));
    for (int i = 0; i < a.universe.size(); ++i) {
        out.configs.push_back(
            normalize_config(a.universe.full(), a.fail_prone[static_cast<std::size_t>(i)]));
    }
    return out;
}

AsymmetricLeagueResult asymmetric_league_harness(const AsymmetricSystem& a, int capacity) {
    AsymmetricLeagueResult r;
    r.b3 = b3_check(a).holds;
    Pfps f = g_embed(a);
    ProcSet full = f.universe.full();
    auto tolerated = tolerated_sets(f, full, capacity);
    r.tolerates_some = !tolerated.empty();
    r.league = is_league(f, full, capacity).is_league();
    r.holds = !(r.b3 && r.tolerates_some) || r.league;

    // The {guild, Π} proof-device quorum function: per tolerated T
    // the quorums of a correct process are Π∖T and Π.
    r.device_ok = true;
    for (ProcSet t : tolerated) {
        ProcSet survivors = full - t;
        if (survivors.empty()) {
            continue;
        }
        ProcSet candidates[2] = {survivors, full};
        for (ProcSet qa : candidates) {
            for (ProcSet qb : candidates) {
                if (((qa & qb) - t).empty()) {
                    r.device_ok = false;
                }
            }
        }
    }
    return r;
}

GuildReport guild_and_wise(const AsymmetricSystem& a, ProcSet actual_faulty) {
    GuildReport report;
    int n = a.universe.size();
    ProcSet correct = a.universe.full() - actual_faulty;
    for (int i = 0; i < n; ++i) {
        if (!correct.has(i)) {
            continue;
        }
        bool wise = false;
        for (ProcSet f : a.fail_prone[static_cast<std::size_t>(i)]) {
            if (actual_faulty.subset_of(f)) {
                wise = true;
                break;
            }
        }
        if (wise) {
            report.wise.add(i);
        }
    }
    report.naive = correct - report.wise;

    auto has_quorum_inside = [&](int p, ProcSet g) {
        for (ProcSet f : a.fail_prone[static_cast<std::size_t>(p)]) {
            if ((a.universe.full() - f).subset_of(g)) {
                return true;
            }
        }
        return false;
    };

    // Maximal guild: greatest fixpoint inside the wise set.
    ProcSet g = report.wise;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            if (g.has(i) && !has_quorum_inside(i, g)) {
                g.remove(i);
                changed = true;
            }
        }
    }
    report.maximal_guild = g;

    // All non-empty guilds live inside the maximal one.
    int members[kMaxProcesses];
    int k = 0;
    for (int i = 0; i < n; ++i) {
        if (g.has(i)) {
            members[k++] = i;
        }
    }
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << k); ++bits) {
        ProcSet cand;
        for (int b = 0; b < k; ++b) {
            if ((bits >> b) & 1) {
                cand.add(members[b]);
            }
        }
        bool ok = true;
        for (int b = 0; b < k && ok; ++b) {
            if (cand.has(members[b]) && !has_quorum_inside(members[b], cand)) {
                ok = false;
            }
        }
        if (ok) {
            report.guilds.push_back(cand);
        }
    }
    canonicalize_family(report.guilds);
    return report;
}

Pfps fbas_derive(const FbasSystem& fb) {
    int n = fb.universe.size();
    Pfps out;
    out.universe = fb.universe;
    out.configs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        ProcSet known = fb.known[static_cast<std::size_t>(i)];
        std::vector<ProcSet> fp;
        for (ProcSet s : fb.slices[static_cast<std::size_t>(i)]) {
            if (!s.has(i)) {
                throw InputError("fbas slice of " + fb.universe.name(i) +
                                 " does not contain its owner");
            }
            if (!s.subset_of(known)) {
                throw InputError("fbas slice of " + fb.universe.name(i) +
                                 " escapes its known set");
            }
            fp.push_back(known - s);
        }
        out.configs.push_back(normalize_config(known, std::move(fp)));
    }
    return out;
}

IntactResult intact_check(const Pfps& f, ProcSet candidate, ProcSet actual_faulty) {
    if (candidate.intersects(actual_faulty)) {
        throw ContractError("intact_check: candidate intersects the faulty set");
    }
    IntactResult r;
    if (candidate.empty()) {
        r.intact = true;
        r.degenerate = true;
        return r;
    }
    View full = View::full(f);
    int n = f.size();
    std::vector<std::vector<ProcSet>> fams(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (candidate.has(i)) {
            // Minimal quorums suffice: intersections only grow on supersets.
            fams[static_cast<std::size_t>(i)] = quorums(f, full, i, true);
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!candidate.has(i)) {
            continue;
        }
        for (int j = i; j < n; ++j) {
            if (!candidate.has(j)) {
                continue;
            }
            for (ProcSet qi : fams[static_cast<std::size_t>(i)]) {
                for (ProcSet qj : fams[static_cast<std::size_t>(j)]) {
                    if ((qi & qj & candidate).empty()) {
                        r.intact = false;
                        r.witness = PairWitness{i, j, qi, qj};
                        return r;
                    }
                }
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (candidate.has(i) && !is_quorum(f, full, i, candidate)) {
            r.intact = false;
            r.witness = PairWitness{i, i, candidate, candidate};
            return r;
        }
    }
    r.intact = true;
    return r;
}

ClusterResult consensus_cluster_check(const Pfps& f, ProcSet candidate, ProcSet actual_faulty) {
    if (candidate.intersects(actual_faulty)) {
        throw ContractError("consensus_cluster_check: candidate intersects the faulty set");
    }
    ClusterResult r;
    View full = View::full(f);
    int n = f.size();
    std::vector<std::vector<ProcSet>> fams(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (candidate.has(i)) {
            fams[static_cast<std::size_t>(i)] = quorums(f, full, i, true);
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!candidate.has(i)) {
            continue;
        }
        for (int j = i; j < n; ++j) {
            if (!candidate.has(j)) {
                continue;
            }
            for (ProcSet qi : fams[static_cast<std::size_t>(i)]) {
                for (ProcSet qj : fams[static_cast<std::size_t>(j)]) {
                    if ((qi & qj).subset_of(actual_faulty)) {
                        r.cluster = false;
                        r.witness = PairWitness{i, j, qi, qj};
                        return r;
                    }
                }
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (candidate.has(i) && !contains_quorum(f, full, i, candidate)) {
            r.cluster = false;
            r.unavailable_member = i;
            return r;
        }
    }
    r.cluster = true;
    return r;
}

bool pbqs_quorum_check(const Pfps& f, ProcSet q) {
    View full = View::full(f);
    for (int j = 0; j < f.size(); ++j) {
        if (q.has(j) && !contains_quorum(f, full, j, q)) {
            return false;
        }
    }
    return true;
}

} // namespace quorumlace
