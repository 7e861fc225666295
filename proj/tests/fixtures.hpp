#pragma once

#include "quorumlace/fuzz.hpp"
#include "quorumlace/model.hpp"

#include <string>
#include <vector>

namespace quorumlace::testing {

// The four-process fixture used throughout: everyone trusts everyone,
// p1 suspects {p3,p4}, p2 and p3 suspect {p1,p4}, p4 suspects {p1,p2}.
inline const Pfps& e4() {
    static const Pfps f = fuzz::crafted_instances()[0];
    return f;
}

// Two self-contained two-process groups with no cross trust.
inline const Pfps& disjoint_groups() {
    static const Pfps f = fuzz::crafted_instances()[1];
    return f;
}

// Singleton universe, no failures assumed.
inline Pfps e1() {
    Universe u{{"p1"}};
    Pfps f;
    f.universe = u;
    f.configs.push_back(normalize_config(u.full(), {}));
    return f;
}

inline ProcSet ids(const Pfps& f, const std::vector<std::string>& names) {
    return f.universe.parse_set(names);
}

// A bridge process p2 between the Byzantine sender p1 and the league
// {p3,p4}: every slice of p2 holds p1 plus one league member, so a lying
// p1 can block p2 into readying a stray value which the league's value
// later conflicts with. This is the instance that exercises the
// conflicting-values (star) clause.
inline Pfps bridge_instance() {
    Universe u{{"p1", "p2", "p3", "p4"}};
    Pfps f;
    f.universe = u;
    f.configs.resize(4);
    f.configs[static_cast<std::size_t>(u.index("p1"))] =
        normalize_config(u.full(), {u.parse_set({"p2", "p3", "p4"})});
    f.configs[static_cast<std::size_t>(u.index("p2"))] =
        normalize_config(u.full(), {u.parse_set({"p2", "p4"}), u.parse_set({"p2", "p3"})});
    f.configs[static_cast<std::size_t>(u.index("p3"))] =
        normalize_config(u.full(), {u.parse_set({"p1", "p2"})});
    f.configs[static_cast<std::size_t>(u.index("p4"))] =
        normalize_config(u.full(), {u.parse_set({"p1", "p2"})});
    return f;
}

} // namespace quorumlace::testing
