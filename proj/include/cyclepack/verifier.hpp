#pragma once

#include <cyclepack/graph.hpp>
#include <cyclepack/packing.hpp>
#include <cyclepack/profile.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace cyclepack {

struct Check {
    std::string name;
    bool pass = true;
    std::string detail;

    friend bool operator==(const Check &, const Check &) = default;
};

/// Ordered check list. `ok` covers the structural checks only; checks whose
/// name starts with "hypothesis_" are informational.
struct VerificationReport {
    bool ok = true;
    std::vector<Check> checks;

    const Check * find(const std::string & name) const {
        for (const auto & c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    bool passed(const std::string & name) const {
        const Check * c = find(name);
        return c && c->pass;
    }

    friend bool operator==(const VerificationReport &, const VerificationReport &) = default;
};

inline bool is_hypothesis_check(const std::string & name) { return name.rfind("hypothesis_", 0) == 0; }

namespace detail {

inline void finish(VerificationReport & r) {
    r.ok = true;
    for (const auto & c : r.checks)
        if (! is_hypothesis_check(c.name) && ! c.pass) r.ok = false;
}

/// Records only the first failure of a category.
struct CheckBuilder {
    Check check;
    explicit CheckBuilder(std::string name) { check.name = std::move(name); }
    void fail(const std::string & detail) {
        if (check.pass) {
            check.pass = false;
            check.detail = detail;
        }
    }
};

inline std::string cycle_label(std::size_t i) { return "cycle " + std::to_string(i); }

inline void hypothesis_checks(const BipartiteGraph & g, const CycleProfile & prof, std::vector<Check> & out) {
    CheckBuilder balance("hypothesis_balance");
    const std::size_t half = prof.n() / 2;
    if (g.x_size() != g.y_size())
        balance.fail("|X| = " + std::to_string(g.x_size()) + " != |Y| = " + std::to_string(g.y_size()));
    else if (g.x_size() < half)
        balance.fail("|X| = |Y| = " + std::to_string(g.x_size()) + " < n/2 = " + std::to_string(half));
    else
        balance.check.detail = "|X| = |Y| = " + std::to_string(g.x_size()) + " >= n/2 = " + std::to_string(half);
    out.push_back(balance.check);

    CheckBuilder deg("hypothesis_min_degree");
    const std::size_t need = degree_threshold(prof);
    if (g.vertex_count() == 0)
        deg.fail("graph has no vertices");
    else {
        std::size_t worst_v = 0, worst = degree(g, 0);
        for (Vertex v = 1; v < g.vertex_count(); ++v)
            if (degree(g, v) < worst) worst = degree(g, v), worst_v = v;
        if (worst < need)
            deg.fail("vertex " + std::to_string(worst_v) + " has degree " + std::to_string(worst) + " < n/2-k+1 = " +
                     std::to_string(need));
        else
            deg.check.detail = "min degree " + std::to_string(worst) + " >= n/2-k+1 = " + std::to_string(need);
    }
    out.push_back(deg.check);
}

}

inline VerificationReport check_hypotheses(const BipartiteGraph & g, const CycleProfile & prof) {
    VerificationReport r;
    detail::hypothesis_checks(g, prof, r.checks);
    // For this report "ok" means the theorem's hypotheses hold.
    r.ok = r.checks[0].pass && r.checks[1].pass;
    return r;
}

inline bool hypotheses_hold(const BipartiteGraph & g, const CycleProfile & prof) { return check_hypotheses(g, prof).ok; }

/// Validates a claimed packing against the host graph and profile. Never
/// throws on bad input; every problem becomes a failed check.
inline VerificationReport verify_packing(const BipartiteGraph & g, const CycleProfile & prof, const Packing & pk) {
    using detail::CheckBuilder;
    using detail::cycle_label;
    VerificationReport r;
    const std::size_t n = g.vertex_count();

    CheckBuilder bip("bipartite");
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : g.neighbors(v)) {
            if (g.side(v) == g.side(w)) bip.fail("edge " + std::to_string(v) + "-" + std::to_string(w) + " inside one side");
            if (! g.neighbors(w).contains(v)) bip.fail("asymmetric adjacency at " + std::to_string(v) + "-" + std::to_string(w));
        }
    r.checks.push_back(bip.check);

    detail::hypothesis_checks(g, prof, r.checks);

    CheckBuilder count("cycle_count");
    if (pk.cycles.size() != prof.k())
        count.fail("expected " + std::to_string(prof.k()) + " cycles, got " + std::to_string(pk.cycles.size()));
    r.checks.push_back(count.check);

    CheckBuilder simple("simple"), adj("adjacency"), len("length"), parity("even_length"), disjoint("disjoint");
    std::vector<int> owner(n, -1);
    for (std::size_t i = 0; i < pk.cycles.size(); ++i) {
        const auto & c = pk.cycles[i];
        if (c.size() < 4) simple.fail(cycle_label(i) + " has only " + std::to_string(c.size()) + " vertices");
        VertexSet seen(n);
        bool ids_ok = true;
        for (Vertex v : c) {
            if (v >= n) {
                simple.fail(cycle_label(i) + " uses invalid vertex id " + std::to_string(v));
                ids_ok = false;
                continue;
            }
            if (seen.contains(v)) simple.fail(cycle_label(i) + " repeats vertex " + std::to_string(v));
            seen.insert(v);
            if (owner[v] >= 0 && owner[v] != static_cast<int>(i))
                disjoint.fail("vertex " + std::to_string(v) + " shared by cycle " + std::to_string(owner[v]) + " and " +
                              cycle_label(i));
            else if (owner[v] < 0)
                owner[v] = static_cast<int>(i);
        }
        if (ids_ok && ! c.empty())
            for (std::size_t j = 0; j < c.size(); ++j) {
                Vertex a = c[j], b = c[(j + 1) % c.size()];
                if (a == b || ! g.adjacent(a, b))
                    adj.fail(cycle_label(i) + " uses non-edge " + std::to_string(a) + "-" + std::to_string(b));
            }
        if (c.size() % 2) parity.fail(cycle_label(i) + " has odd length " + std::to_string(c.size()));
        if (i < prof.k() && c.size() < prof[i])
            len.fail(cycle_label(i) + " has length " + std::to_string(c.size()) + " < required " + std::to_string(prof[i]));
    }
    for (auto * b : {&simple, &adj, &len, &parity, &disjoint}) r.checks.push_back(b->check);

    detail::finish(r);
    return r;
}

inline nlohmann::json to_json(const VerificationReport & r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto & c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"ok", r.ok}, {"checks", checks}};
}

}
