#include "quorumlace/model.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace quorumlace {

bool set_lex_less(ProcSet a, ProcSet b) {
    // Compare as ascending index sequences; a proper prefix sorts first.
    while (true) {
        if (a.bits == b.bits) {
            return false;
        }
        if (a.empty()) {
            return true;
        }
        if (b.empty()) {
            return false;
        }
        int ia = a.lowest();
        int ib = b.lowest();
        if (ia != ib) {
            return ia < ib;
        }
        a.remove(ia);
        b.remove(ib);
    }
}

bool family_order_less(ProcSet a, ProcSet b) {
    if (a.count() != b.count()) {
        return a.count() < b.count();
    }
    return set_lex_less(a, b);
}

void canonicalize_family(std::vector<ProcSet>& family) {
    std::sort(family.begin(), family.end(), family_order_less);
    family.erase(std::unique(family.begin(), family.end()), family.end());
}

void minimalize_family(std::vector<ProcSet>& family) {
    canonicalize_family(family);
    std::vector<ProcSet> minimal;
    for (ProcSet s : family) {
        bool dominated = false;
        for (ProcSet m : minimal) {
            if (m.subset_of(s)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            minimal.push_back(s);
        }
    }
    family = std::move(minimal);
}

// Universe -----------------------------------------------------------------

Universe::Universe(std::vector<std::string> ids) : ids_(std::move(ids)) {
    for (const auto& id : ids_) {
        if (id.empty()) {
            throw InputError("process id must be a non-empty token");
        }
    }
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    if (ids_.empty()) {
        throw InputError("universe must contain at least one process");
    }
    if (static_cast<int>(ids_.size()) > kMaxProcesses) {
        throw CapacityError("universe of " + std::to_string(ids_.size()) +
                            " processes exceeds the representable maximum of " +
                            std::to_string(kMaxProcesses));
    }
}

int Universe::index(const std::string& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) {
        throw InputError("unknown process id '" + id + "'");
    }
    return static_cast<int>(it - ids_.begin());
}

std::optional<int> Universe::try_index(const std::string& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) {
        return std::nullopt;
    }
    return static_cast<int>(it - ids_.begin());
}

ProcSet Universe::parse_set(const std::vector<std::string>& ids) const {
    ProcSet s;
    for (const auto& id : ids) {
        s.add(index(id));
    }
    return s;
}

std::vector<std::string> Universe::set_names(ProcSet s) const {
    std::vector<std::string> out;
    for (int i = 0; i < size(); ++i) {
        if (s.has(i)) {
            out.push_back(name(i));
        }
    }
    return out;
}

std::string Universe::set_to_string(ProcSet s) const {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < size(); ++i) {
        if (s.has(i)) {
            if (!first) {
                out += ",";
            }
            out += name(i);
            first = false;
        }
    }
    out += "}";
    return out;
}

// Configurations -------------------------------------------------------------

std::vector<ProcSet> Configuration::slices() const {
    std::vector<ProcSet> out;
    out.reserve(fail_prone.size());
    for (ProcSet f : fail_prone) {
        out.push_back(trusted - f);
    }
    return out;
}

bool Configuration::degenerate() const {
    for (ProcSet f : fail_prone) {
        if (trusted.subset_of(f)) {
            return true;
        }
    }
    return false;
}

Configuration normalize_config(ProcSet trusted, std::vector<ProcSet> raw_fail_prone) {
    if (trusted.empty()) {
        throw InputError("configuration rejected: empty trusted set");
    }
    for (ProcSet& f : raw_fail_prone) {
        f = f & trusted;
    }
    if (raw_fail_prone.empty()) {
        raw_fail_prone.push_back(ProcSet{});
    }
    minimalize_family(raw_fail_prone);
    return Configuration{trusted, std::move(raw_fail_prone)};
}

View View::full(const Pfps& f) {
    View v = View::bottom(f.size());
    for (int i = 0; i < f.size(); ++i) {
        v.set(i, f.config(i));
    }
    return v;
}

ProcSet View::domain() const {
    ProcSet d;
    for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
        if (entries[static_cast<std::size_t>(i)].has_value()) {
            d.add(i);
        }
    }
    return d;
}

// Slice calculus --------------------------------------------------------------

bool has_slice_in(const Configuration& c, ProcSet s) {
    for (ProcSet f : c.fail_prone) {
        if ((c.trusted - f).subset_of(s)) {
            return true;
        }
    }
    return false;
}

std::vector<const Configuration*> slice_table(const Pfps& f) {
    std::vector<const Configuration*> table(static_cast<std::size_t>(f.size()));
    for (int i = 0; i < f.size(); ++i) {
        table[static_cast<std::size_t>(i)] = &f.config(i);
    }
    return table;
}

std::vector<const Configuration*> slice_table(const View& v) {
    std::vector<const Configuration*> table(v.entries.size());
    for (std::size_t i = 0; i < v.entries.size(); ++i) {
        table[i] = v.entries[i] ? &*v.entries[i] : nullptr;
    }
    return table;
}

ProcSet max_closed_subset_table(const std::vector<const Configuration*>& table, ProcSet s,
                                ProcSet exempt) {
    int n = static_cast<int>(table.size());
    ProcSet m = s;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            if (!m.has(i) || exempt.has(i)) {
                continue;
            }
            const Configuration* c = table[static_cast<std::size_t>(i)];
            if (c != nullptr && !has_slice_in(*c, m)) {
                m.remove(i);
                changed = true;
            }
        }
    }
    return m;
}

ProcSet max_closed_subset(const Pfps& f, ProcSet s, ProcSet exempt) {
    return max_closed_subset_table(slice_table(f), s, exempt);
}

ProcSet max_closed_subset(const Pfps& f, const View& v, ProcSet s, ProcSet exempt) {
    (void)f;
    return max_closed_subset_table(slice_table(v), s, exempt);
}

// Closed-and-rooted enumeration ------------------------------------------------

namespace {

// All sets that are rooted at `root_config` and closed under the table's
// slice requirements outside `exempt`. Exponential in n; guarded by callers.
std::vector<ProcSet> all_closed_rooted(const std::vector<const Configuration*>& table, int n,
                                       const Configuration& root_config, ProcSet exempt) {
    if (n > 26) {
        throw CapacityError("exhaustive subset enumeration over " + std::to_string(n) +
                            " processes is not supported; use the minimal-family form");
    }
    std::vector<ProcSet> out;
    std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t bits = 0; bits < limit; ++bits) {
        ProcSet q(bits);
        if (!has_slice_in(root_config, q)) {
            continue;
        }
        bool closed = true;
        for (int j = 0; j < n && closed; ++j) {
            if (!q.has(j) || exempt.has(j)) {
                continue;
            }
            const Configuration* c = table[static_cast<std::size_t>(j)];
            if (c != nullptr && !has_slice_in(*c, q)) {
                closed = false;
            }
        }
        if (closed) {
            out.push_back(q);
        }
    }
    canonicalize_family(out);
    return out;
}

} // namespace

std::vector<ProcSet> minimal_closed_rooted(const std::vector<const Configuration*>& table, int n,
                                           const Configuration& root_config, ProcSet exempt) {
    // Branching closure: grow a candidate from each root slice; whenever a
    // member lacks a slice inside, branch on each of its slices. Every
    // minimal closed rooted set is reached by some branch.
    std::vector<ProcSet> results;
    std::vector<ProcSet> stack;
    std::unordered_set<std::uint64_t> seen;
    for (ProcSet s0 : root_config.slices()) {
        if (seen.insert(s0.bits).second) {
            stack.push_back(s0);
        }
    }
    std::size_t visited = 0;
    while (!stack.empty()) {
        if (++visited > (std::size_t{1} << 22)) {
            throw CapacityError("minimal closed-rooted search exceeded its exploration budget");
        }
        ProcSet cur = stack.back();
        stack.pop_back();
        bool dominated = false;
        for (ProcSet r : results) {
            if (r.subset_of(cur)) {
                dominated = true;
                break;
            }
        }
        if (dominated) {
            continue;
        }
        int violator = -1;
        for (int j = 0; j < n; ++j) {
            if (!cur.has(j) || exempt.has(j)) {
                continue;
            }
            const Configuration* c = table[static_cast<std::size_t>(j)];
            if (c != nullptr && !has_slice_in(*c, cur)) {
                violator = j;
                break;
            }
        }
        if (violator < 0) {
            results.push_back(cur);
            continue;
        }
        for (ProcSet s : table[static_cast<std::size_t>(violator)]->slices()) {
            ProcSet next = cur | s;
            if (seen.insert(next.bits).second) {
                stack.push_back(next);
            }
        }
    }
    minimalize_family(results);
    return results;
}

// Survivor sets, tolerance ------------------------------------------------------

std::vector<ProcSet> survivor_sets(const Pfps& f, int p, bool include_all) {
    auto table = slice_table(f);
    if (include_all) {
        return all_closed_rooted(table, f.size(), f.config(p), ProcSet{});
    }
    return minimal_closed_rooted(table, f.size(), f.config(p), ProcSet{});
}

bool tolerates(const Pfps& f, int p, ProcSet a) {
    ProcSet core = max_closed_subset(f, f.universe.full() - a);
    return has_slice_in(f.config(p), core);
}

bool tolerated_by(const Pfps& f, ProcSet l, ProcSet a) {
    ProcSet check = l - a;
    for (int i = 0; i < f.size(); ++i) {
        if (check.has(i) && !tolerates(f, i, a)) {
            return false;
        }
    }
    return true;
}

// Quorums ------------------------------------------------------------------------

bool is_quorum(const Pfps& f, const View& v, int p, ProcSet q) {
    if (!v.known(p)) {
        throw ContractError("is_quorum: evaluating process '" + f.universe.name(p) +
                            "' has no configuration in the view");
    }
    if (!has_slice_in(v.config(p), q)) {
        return false;
    }
    for (int j = 0; j < f.size(); ++j) {
        if (q.has(j) && v.known(j) && !has_slice_in(v.config(j), q)) {
            return false;
        }
    }
    return true;
}

std::vector<ProcSet> quorums(const Pfps& f, const View& v, int p, bool minimal_only) {
    if (!v.known(p)) {
        throw ContractError("quorums: evaluating process '" + f.universe.name(p) +
                            "' has no configuration in the view");
    }
    auto table = slice_table(v);
    if (minimal_only) {
        return minimal_closed_rooted(table, f.size(), v.config(p), ProcSet{});
    }
    return all_closed_rooted(table, f.size(), v.config(p), ProcSet{});
}

bool contains_quorum(const Pfps& f, const View& v, int p, ProcSet s) {
    if (!v.known(p)) {
        throw ContractError("contains_quorum: evaluating process '" + f.universe.name(p) +
                            "' has no configuration in the view");
    }
    ProcSet m = max_closed_subset_table(slice_table(v), s, ProcSet{});
    return has_slice_in(v.config(p), m);
}

// Views ---------------------------------------------------------------------------

View worst_case_view(const Pfps& f, ProcSet t) {
    View v = View::bottom(f.size());
    for (int i = 0; i < f.size(); ++i) {
        v.set(i, t.has(i) ? Configuration::empty_config() : f.config(i));
    }
    return v;
}

bool is_resilient(const Pfps& f, const View& v, ProcSet t) {
    for (int i = 0; i < f.size(); ++i) {
        if (t.has(i) || !v.known(i)) {
            continue;
        }
        if (!(v.config(i) == f.config(i))) {
            return false;
        }
    }
    return true;
}

// Blocking -------------------------------------------------------------------------

bool blocks(const Configuration& c, ProcSet b) {
    if (c.degenerate()) {
        return true;
    }
    for (ProcSet f : c.fail_prone) {
        if (!(c.trusted - f).intersects(b)) {
            return false;
        }
    }
    return true;
}

ProcSet blocked_closure(const Pfps& f, ProcSet b) {
    ProcSet m = b;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < f.size(); ++i) {
            if (!m.has(i) && blocks(f.config(i), m)) {
                m.add(i);
                changed = true;
            }
        }
    }
    return m;
}

} // namespace quorumlace
