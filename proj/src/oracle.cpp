#include "quorumlace/oracle.hpp"

namespace quorumlace::oracle {

namespace {

// Deliberately re-derived here rather than calling the library form.
bool slice_inside(const Configuration& c, ProcSet s) {
    for (ProcSet f : c.fail_prone) {
        ProcSet slice = c.trusted - f;
        if (slice.subset_of(s)) {
            return true;
        }
    }
    return false;
}

void check_bound(int n, const char* what) {
    if (n > 22) {
        throw CapacityError(std::string(what) + ": oracle enumeration over " + std::to_string(n) +
                            " processes is out of reach");
    }
}

} // namespace

bool assumptions_satisfied(const Pfps& f, int p, ProcSet a) {
    int n = f.size();
    ProcSet satisfied = f.universe.full();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            if (!satisfied.has(i)) {
                continue;
            }
            const Configuration& c = f.config(i);
            bool ok = false;
            for (ProcSet fp : c.fail_prone) {
                if ((a & c.trusted).subset_of(fp) && (c.trusted - fp).subset_of(satisfied)) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                satisfied.remove(i);
                changed = true;
            }
        }
    }
    return satisfied.has(p);
}

bool tolerates_by_survivor(const Pfps& f, int p, ProcSet a) {
    for (ProcSet s : closed_rooted_sets(f, p, false)) {
        if (!s.intersects(a)) {
            return true;
        }
    }
    return false;
}

std::vector<ProcSet> closed_rooted_sets(const Pfps& f, int p, bool minimal_only) {
    int n = f.size();
    check_bound(n, "closed_rooted_sets");
    std::vector<ProcSet> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        ProcSet s(bits);
        if (!slice_inside(f.config(p), s)) {
            continue;
        }
        bool closed = true;
        for (int j = 0; j < n && closed; ++j) {
            if (s.has(j) && !slice_inside(f.config(j), s)) {
                closed = false;
            }
        }
        if (closed) {
            out.push_back(s);
        }
    }
    if (minimal_only) {
        minimalize_family(out);
    } else {
        canonicalize_family(out);
    }
    return out;
}

std::vector<ProcSet> quorums_literal(const Pfps& f, const View& v, int p) {
    int n = f.size();
    check_bound(n, "quorums_literal");
    if (!v.known(p)) {
        throw ContractError("quorums_literal: evaluating process has no view entry");
    }
    std::vector<ProcSet> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        ProcSet q(bits);
        if (!slice_inside(v.config(p), q)) {
            continue;
        }
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            if (q.has(j) && v.known(j) && !slice_inside(v.config(j), q)) {
                ok = false;
            }
        }
        if (ok) {
            out.push_back(q);
        }
    }
    canonicalize_family(out);
    return out;
}

std::vector<ProcSet> inclusive_rooted_sets(const Pfps& f, int root, ProcSet t,
                                           bool minimal_only) {
    int n = f.size();
    check_bound(n, "inclusive_rooted_sets");
    std::vector<ProcSet> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        ProcSet s(bits);
        if (!slice_inside(f.config(root), s)) {
            continue;
        }
        bool inclusive = true;
        for (int j = 0; j < n && inclusive; ++j) {
            if (s.has(j) && !t.has(j) && !slice_inside(f.config(j), s)) {
                inclusive = false;
            }
        }
        if (inclusive) {
            out.push_back(s);
        }
    }
    if (minimal_only) {
        minimalize_family(out);
    } else {
        canonicalize_family(out);
    }
    return out;
}

std::vector<ProcSet> tolerated_sets(const Pfps& f, ProcSet l) {
    int n = f.size();
    check_bound(n, "tolerated_sets");
    std::vector<ProcSet> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        ProcSet t(bits);
        if ((l - t).empty()) {
            continue; // vacuously tolerated, constrains nothing
        }
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            if (l.has(i) && !t.has(i) && !assumptions_satisfied(f, i, t)) {
                ok = false;
            }
        }
        if (ok) {
            out.push_back(t);
        }
    }
    canonicalize_family(out);
    return out;
}

bool league_consistency_direct(const Pfps& f, ProcSet l) {
    // Worst-case views suffice: every quorum in any T-resilient view
    // contains all the constraints a worst-case quorum does, and the
    // worst-case view is itself T-resilient.
    int n = f.size();
    for (ProcSet t : tolerated_sets(f, l)) {
        View wc = worst_case_view(f, t);
        std::vector<std::vector<ProcSet>> fams(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            if ((l - t).has(i)) {
                fams[static_cast<std::size_t>(i)] = quorums_literal(f, wc, i);
            }
        }
        for (int i = 0; i < n; ++i) {
            if (!(l - t).has(i)) {
                continue;
            }
            for (int j = i; j < n; ++j) {
                if (!(l - t).has(j)) {
                    continue;
                }
                for (ProcSet qi : fams[static_cast<std::size_t>(i)]) {
                    for (ProcSet qj : fams[static_cast<std::size_t>(j)]) {
                        if (((qi & qj) - t).empty()) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    return true;
}

bool league_availability_direct(const Pfps& f, ProcSet l) {
    int n = f.size();
    for (ProcSet t : tolerated_sets(f, l)) {
        for (int i = 0; i < n; ++i) {
            if (!(l - t).has(i)) {
                continue;
            }
            bool found = false;
            for (ProcSet s : closed_rooted_sets(f, i, false)) {
                if (s.subset_of(l - t)) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                return false;
            }
        }
    }
    return true;
}

bool is_league_direct(const Pfps& f, ProcSet l) {
    return league_consistency_direct(f, l) && league_availability_direct(f, l);
}

ProcSet blocked_closure_literal(const Pfps& f, ProcSet b) {
    int n = f.size();
    ProcSet cur = b;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            if (cur.has(i)) {
                continue;
            }
            const Configuration& c = f.config(i);
            bool blocked = true;
            for (ProcSet fp : c.fail_prone) {
                ProcSet slice = c.trusted - fp;
                if (slice.empty()) {
                    continue; // empty slice: blocked by anything
                }
                if (!slice.intersects(cur)) {
                    blocked = false;
                    break;
                }
            }
            if (blocked) {
                cur.add(i);
                changed = true;
            }
        }
    }
    return cur;
}

} // namespace quorumlace::oracle
