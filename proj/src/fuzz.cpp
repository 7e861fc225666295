#include "quorumlace/fuzz.hpp"

#include "quorumlace/bridges.hpp"
#include "quorumlace/json_io.hpp"
#include "quorumlace/league.hpp"
#include "quorumlace/oracle.hpp"

#include <algorithm>

namespace quorumlace::fuzz {

const std::vector<std::string> kAllProperties = {"tolerance",  "survivor-quorums",  "worst-case",  "league",
                                                 "blocking", "personal-quorums", "cascade", "classic"};

namespace {

std::vector<std::string> process_names(int n) {
    std::vector<std::string> ids;
    ids.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        ids.push_back("p" + std::to_string(i));
    }
    return ids;
}

Pfps build(const std::vector<std::string>& ids,
           const std::vector<std::pair<std::vector<std::string>, std::vector<std::vector<std::string>>>>&
               raw) {
    Universe u{ids};
    Pfps f;
    f.universe = u;
    f.configs.resize(static_cast<std::size_t>(u.size()));
    for (std::size_t i = 0; i < raw.size(); ++i) {
        ProcSet trusted = u.parse_set(raw[i].first);
        std::vector<ProcSet> fp;
        for (const auto& set : raw[i].second) {
            fp.push_back(u.parse_set(set));
        }
        f.configs[static_cast<std::size_t>(u.index(ids[i]))] =
            normalize_config(trusted, std::move(fp));
    }
    return f;
}

ProcSet random_subset(int n, Rng& rng, std::uint64_t num, std::uint64_t den) {
    ProcSet s;
    for (int i = 0; i < n; ++i) {
        if (rng.chance(num, den)) {
            s.add(i);
        }
    }
    return s;
}

Configuration random_config(int n, int self, Rng& rng) {
    ProcSet trusted = random_subset(n, rng, 1, 2);
    trusted.add(self);
    int count = 1 + static_cast<int>(rng.below(3));
    std::vector<ProcSet> fp;
    for (int k = 0; k < count; ++k) {
        if (rng.chance(1, 16)) {
            fp.push_back(trusted); // degenerate entry: empty slice
        } else {
            fp.push_back(random_subset(n, rng, 1, 3) & trusted);
        }
    }
    return normalize_config(trusted, std::move(fp));
}

std::string describe(const Pfps& f) {
    ConfigFile cf{f, std::nullopt};
    return render_config_file(cf);
}

std::string set_str(const Pfps& f, ProcSet s) { return f.universe.set_to_string(s); }

bool same_family(std::vector<ProcSet> a, std::vector<ProcSet> b) {
    canonicalize_family(a);
    canonicalize_family(b);
    return a == b;
}

} // namespace

Pfps random_pfps(int n, Rng& rng) {
    Pfps f;
    f.universe = Universe{process_names(n)};
    f.configs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        f.configs.push_back(random_config(n, i, rng));
    }
    return f;
}

std::vector<ProcSet> random_antichain(int n, Rng& rng) {
    std::vector<ProcSet> fp;
    int count = 1 + static_cast<int>(rng.below(4));
    for (int k = 0; k < count; ++k) {
        fp.push_back(random_subset(n, rng, 1, 3));
    }
    minimalize_family(fp);
    return fp;
}

std::vector<Pfps> crafted_instances() {
    std::vector<Pfps> out;
    // Example fixture: four processes with interlocking assumptions.
    out.push_back(build(process_names(4), {
                                              {{"p1", "p2", "p3", "p4"}, {{"p3", "p4"}}},
                                              {{"p1", "p2", "p3", "p4"}, {{"p1", "p4"}}},
                                              {{"p1", "p2", "p3", "p4"}, {{"p1", "p4"}}},
                                              {{"p1", "p2", "p3", "p4"}, {{"p1", "p2"}}},
                                          }));
    // Two self-contained groups that never intersect.
    out.push_back(build(process_names(4), {
                                              {{"p1", "p2"}, {{}}},
                                              {{"p1", "p2"}, {{}}},
                                              {{"p3", "p4"}, {{}}},
                                              {{"p3", "p4"}, {{}}},
                                          }));
    // Every consistency violation of this instance sits inside a tolerated
    // set; it separates the (I ∩ I') ∖ T check from plain intersection.
    out.push_back(build({"pa", "pb", "pc", "pd"},
                        {
                            {{"pa", "pb", "pc", "pd"}, {{"pb", "pc"}, {"pd"}}},
                            {{"pa", "pb", "pc", "pd"}, {{"pa", "pc"}, {"pd"}}},
                            {{"pa", "pb", "pc", "pd"}, {{"pb", "pd"}}},
                            {{"pa", "pb", "pc", "pd"}, {{"pa", "pc"}}},
                        }));
    return out;
}

const Pfps& t_masked_inconsistency_instance() {
    static const Pfps instance = crafted_instances()[2];
    return instance;
}

Violations check_tolerance(const Pfps& f) {
    Violations out;
    int n = f.size();
    for (int p = 0; p < n; ++p) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
            ProcSet a(bits);
            bool impl = tolerates(f, p, a);
            bool gfp = oracle::assumptions_satisfied(f, p, a);
            bool surv = oracle::tolerates_by_survivor(f, p, a);
            if (impl != gfp || impl != surv) {
                out.push_back({"tolerance", "tolerates(" + f.universe.name(p) + ", " +
                                             set_str(f, a) + ") = " + std::to_string(impl) +
                                             " but fixpoint=" + std::to_string(gfp) +
                                             " survivor=" + std::to_string(surv)});
            }
        }
    }
    return out;
}

Violations check_survivor_quorums(const Pfps& f) {
    Violations out;
    View full = View::full(f);
    for (int p = 0; p < f.size(); ++p) {
        auto all_q = quorums(f, full, p, false);
        auto all_s = survivor_sets(f, p, true);
        auto all_o = oracle::closed_rooted_sets(f, p, false);
        if (!same_family(all_q, all_s) || !same_family(all_q, all_o)) {
            out.push_back({"survivor-quorums", "full-view quorums of " + f.universe.name(p) +
                                         " differ from the closed-rooted family"});
        }
        auto min_q = quorums(f, full, p, true);
        auto min_s = survivor_sets(f, p, false);
        auto min_o = oracle::closed_rooted_sets(f, p, true);
        if (!same_family(min_q, min_s) || !same_family(min_q, min_o)) {
            out.push_back({"survivor-quorums", "minimal quorum family of " + f.universe.name(p) +
                                         " differs from the minimal survivor family"});
        }
        for (ProcSet s : all_s) {
            View tailored = worst_case_view(f, f.universe.full() - s);
            if (!is_quorum(f, tailored, p, s)) {
                out.push_back({"survivor-quorums", "survivor set " + set_str(f, s) + " of " +
                                             f.universe.name(p) +
                                             " is not a quorum in its tailored view"});
            }
        }
    }
    return out;
}

Violations check_worst_case_quorums(const Pfps& f, Rng& rng) {
    Violations out;
    int n = f.size();
    std::vector<ProcSet> ts = {ProcSet{}};
    for (int k = 0; k < 4; ++k) {
        ts.push_back(random_subset(n, rng, 1, 3));
    }
    for (ProcSet t : ts) {
        View wc = worst_case_view(f, t);
        for (int variant = 0; variant < 3; ++variant) {
            View v = View::bottom(n);
            for (int j = 0; j < n; ++j) {
                if (!t.has(j)) {
                    // Truthful or unknown outside t; the first variant keeps
                    // full knowledge of the correct processes.
                    if (variant == 0 || !rng.chance(1, 4)) {
                        v.set(j, f.config(j));
                    }
                } else {
                    switch (rng.below(4)) {
                    case 0: break; // ⊥
                    case 1: v.set(j, Configuration::empty_config()); break;
                    case 2: v.set(j, f.config(j)); break;
                    default: v.set(j, random_config(n, j, rng)); break;
                    }
                }
            }
            if (!is_resilient(f, v, t)) {
                out.push_back({"worst-case", "sampled view is not resilient for " + set_str(f, t)});
                continue;
            }
            for (int p = 0; p < n; ++p) {
                if (t.has(p) || !v.known(p)) {
                    continue;
                }
                auto min_wc = quorums(f, wc, p, true);
                for (ProcSet q : quorums(f, v, p, false)) {
                    if (!(q - t).subset_of(v.domain())) {
                        continue; // members the process has not heard from
                    }
                    if (!is_quorum(f, wc, p, q)) {
                        out.push_back({"worst-case", "quorum " + set_str(f, q) +
                                                     " does not survive the worst-case view for " +
                                                     set_str(f, t)});
                    }
                    bool contained = false;
                    for (ProcSet qm : min_wc) {
                        if (qm.subset_of(q)) {
                            contained = true;
                            break;
                        }
                    }
                    if (!contained) {
                        out.push_back({"worst-case", "no worst-case quorum inside " + set_str(f, q)});
                    }
                    // Quorum-transit: inclusive up to t and rooted at p.
                    if (!has_slice_in(f.config(p), q)) {
                        out.push_back({"worst-case", "quorum " + set_str(f, q) + " is not rooted"});
                    }
                    for (int j = 0; j < n; ++j) {
                        if ((q - t).has(j) && !has_slice_in(f.config(j), q)) {
                            out.push_back({"worst-case", "quorum " + set_str(f, q) +
                                                         " is not inclusive up to " +
                                                         set_str(f, t)});
                        }
                    }
                }
            }
        }
    }
    return out;
}

Violations check_league_characterization(const Pfps& f, Rng& rng) {
    Violations out;
    int n = f.size();
    std::vector<ProcSet> candidates = {f.universe.full()};
    candidates.push_back(random_subset(n, rng, 2, 3));
    candidates.push_back(random_subset(n, rng, 1, 2));
    for (ProcSet l : candidates) {
        if (!same_family(tolerated_sets(f, l), oracle::tolerated_sets(f, l))) {
            out.push_back({"league", "tolerated families differ for " + set_str(f, l)});
            continue;
        }
        bool impl_cons = check_consistency(f, l).holds;
        bool oracle_cons = oracle::league_consistency_direct(f, l);
        if (impl_cons != oracle_cons) {
            out.push_back({"league", "consistency verdict for " + set_str(f, l) + ": impl=" +
                                         std::to_string(impl_cons) +
                                         " direct=" + std::to_string(oracle_cons)});
        }
        bool impl_avail = check_availability(f, l).holds;
        bool oracle_avail = oracle::league_availability_direct(f, l);
        if (impl_avail != oracle_avail) {
            out.push_back({"league", "availability verdict for " + set_str(f, l) + ": impl=" +
                                         std::to_string(impl_avail) +
                                         " direct=" + std::to_string(oracle_avail)});
        }
        if (is_league(f, l).is_league() != oracle::is_league_direct(f, l)) {
            out.push_back({"league", "league verdict mismatch for " + set_str(f, l)});
        }
    }
    // Minimal inclusive/rooted families against the literal enumeration, and
    // the equivalence with worst-case-view quorums they stand in for.
    ProcSet t = random_subset(n, rng, 1, 3);
    View wc = worst_case_view(f, t);
    for (int root = 0; root < n; ++root) {
        if (!same_family(inclusive_rooted_minimal(f, root, t).sets,
                         oracle::inclusive_rooted_sets(f, root, t, true))) {
            out.push_back({"league", "minimal inclusive/rooted family of " +
                                         f.universe.name(root) + " up to " + set_str(f, t) +
                                         " differs from the literal enumeration"});
        }
        // For roots outside t the inclusive/rooted sets are exactly the
        // worst-case-view quorums (inside t the worst-case entry erases the
        // root's own slice requirement, so the families diverge).
        if (!t.has(root) &&
            !same_family(oracle::inclusive_rooted_sets(f, root, t, false),
                         oracle::quorums_literal(f, wc, root))) {
            out.push_back({"league", "inclusive/rooted sets of " + f.universe.name(root) +
                                         " up to " + set_str(f, t) +
                                         " differ from the worst-case-view quorums"});
        }
    }
    return out;
}

namespace {

std::vector<ProcSet> league_candidates(const Pfps& f, Rng& rng) {
    std::vector<ProcSet> candidates;
    int n = f.size();
    if (n <= 5) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
            candidates.emplace_back(bits);
        }
    } else {
        candidates.push_back(f.universe.full());
        for (int k = 0; k < 6; ++k) {
            candidates.push_back(random_subset(n, rng, 2, 3));
        }
    }
    return candidates;
}

} // namespace

Violations check_blocked_closure(const Pfps& f, Rng& rng) {
    Violations out;
    for (ProcSet l : league_candidates(f, rng)) {
        if (!is_league(f, l).is_league()) {
            continue;
        }
        for (ProcSet t : tolerated_sets(f, l)) {
            ProcSet closure = blocked_closure(f, t);
            if (closure != oracle::blocked_closure_literal(f, t)) {
                out.push_back({"blocking", "blocked closure of " + set_str(f, t) +
                                              " differs from the literal iteration"});
            }
            if (!(closure & (l - t)).empty()) {
                out.push_back({"blocking", "blocked closure of tolerated " + set_str(f, t) +
                                              " reaches league members " +
                                              set_str(f, closure & (l - t))});
            }
        }
    }
    return out;
}

Violations check_personal_quorums(const Pfps& f) {
    Violations out;
    View full = View::full(f);
    for (int p = 0; p < f.size(); ++p) {
        for (ProcSet q : quorums(f, full, p, false)) {
            if (!pbqs_quorum_check(f, q)) {
                out.push_back({"personal-quorums", "quorum " + set_str(f, q) + " of " + f.universe.name(p) +
                                              " fails the personal-quorum property"});
            }
        }
    }
    return out;
}

Violations check_cascade(const Pfps& f, Rng& rng) {
    Violations out;
    int n = f.size();
    View full = View::full(f);
    for (ProcSet l : league_candidates(f, rng)) {
        if (!is_league(f, l).is_league()) {
            continue;
        }
        for (ProcSet t : tolerated_sets(f, l)) {
            View wc = worst_case_view(f, t);
            for (int p = 0; p < n; ++p) {
                if (!(l - t).has(p)) {
                    continue;
                }
                std::vector<ProcSet> starts = quorums(f, wc, p, true);
                auto from_full = quorums(f, full, p, true);
                starts.insert(starts.end(), from_full.begin(), from_full.end());
                for (ProcSet q : starts) {
                    ProcSet b = q - t;
                    bool covered = false;
                    for (int round = 0; round <= n; ++round) {
                        if ((l - t).subset_of(b)) {
                            covered = true;
                            break;
                        }
                        int next = -1;
                        for (int j = 0; j < n; ++j) {
                            if (!b.has(j) && !t.has(j) && blocks(f.config(j), b)) {
                                next = j;
                                break;
                            }
                        }
                        if (next < 0) {
                            break; // the cascade property guarantees progress here
                        }
                        b.add(next);
                    }
                    if (!covered) {
                        out.push_back({"cascade", "from quorum " + set_str(f, q) + " of " +
                                                      f.universe.name(p) + " with tolerated " +
                                                      set_str(f, t) +
                                                      " the blocked set stalls at " +
                                                      set_str(f, b)});
                    }
                }
            }
        }
    }
    return out;
}

Violations check_classic_equivalence(int n, Rng& rng) {
    Violations out;
    Universe u{process_names(n)};
    SymmetricSystem s = SymmetricSystem::make(u, random_antichain(n, rng));
    ClassicEquivalenceResult r = classic_equivalence_harness(s);
    if (!r.agree) {
        std::string fam;
        for (ProcSet fp : s.fail_prone) {
            fam += u.set_to_string(fp);
        }
        out.push_back({"classic", "q3=" + std::to_string(r.q3) + " league=" +
                                   std::to_string(r.league) + " on fail-prone family " + fam});
    }
    return out;
}

FuzzReport run_fuzz(const FuzzOptions& options) {
    FuzzReport report;
    Rng rng(options.seed);
    std::vector<std::string> props =
        options.properties.empty() ? kAllProperties : options.properties;
    auto enabled = [&](const char* p) {
        return std::find(props.begin(), props.end(), p) != props.end();
    };

    // Zero requested instances means an empty (vacuously passing) report;
    // otherwise the crafted corpus always runs ahead of the random ones.
    std::vector<Pfps> instances;
    if (options.instances > 0) {
        instances = crafted_instances();
        for (int k = 0; k < options.instances; ++k) {
            instances.push_back(random_pfps(options.processes, rng));
        }
    }

    for (const Pfps& f : instances) {
        ++report.instances;
        Violations found;
        auto collect = [&](Violations v) {
            ++report.checks;
            found.insert(found.end(), v.begin(), v.end());
        };
        if (enabled("tolerance")) {
            collect(check_tolerance(f));
        }
        if (enabled("survivor-quorums")) {
            collect(check_survivor_quorums(f));
        }
        if (enabled("worst-case")) {
            collect(check_worst_case_quorums(f, rng));
        }
        if (enabled("league")) {
            collect(check_league_characterization(f, rng));
        }
        if (enabled("blocking")) {
            collect(check_blocked_closure(f, rng));
        }
        if (enabled("personal-quorums")) {
            collect(check_personal_quorums(f));
        }
        if (enabled("cascade")) {
            collect(check_cascade(f, rng));
        }
        if (!found.empty()) {
            std::string desc = describe(f);
            for (const Violation& v : found) {
                report.findings.push_back(FuzzFinding{desc, v});
            }
        }
        if (enabled("classic")) {
            ++report.checks;
            for (const Violation& v : check_classic_equivalence(3 + static_cast<int>(rng.below(5)), rng)) {
                report.findings.push_back(FuzzFinding{"(symmetric instance)", v});
            }
        }
    }
    return report;
}

} // namespace quorumlace::fuzz
