#pragma once

// Independent reference implementations for the tests. Nothing here reuses
// the library's search code; graphs are handled as raw edge lists or plain
// adjacency matrices.

#include <cyclepack.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace testing_support {

using namespace cyclepack;

inline BipartiteGraph make_graph(std::size_t x, std::size_t y, std::vector<Edge> edges) {
    return BipartiteGraph(x, y, edges);
}

/// C_len with X = {0..len/2-1}, Y after it; the cycle order is x0 y0 x1 y1 ...
inline BipartiteGraph cycle_host(std::size_t len) {
    const std::size_t h = len / 2;
    std::vector<Edge> e;
    for (std::size_t i = 0; i < h; ++i) {
        e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(h + i));
        e.emplace_back(static_cast<Vertex>((i + 1) % h), static_cast<Vertex>(h + i));
    }
    return BipartiteGraph(h, h, e);
}

inline std::vector<Vertex> cycle_host_order(std::size_t len) {
    const std::size_t h = len / 2;
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < h; ++i) {
        out.push_back(static_cast<Vertex>(i));
        out.push_back(static_cast<Vertex>(h + i));
    }
    return out;
}

/// Random bipartite graph by independent coin flips.
inline BipartiteGraph random_graph(std::size_t x, std::size_t y, double p, Rng & rng) {
    std::vector<Edge> e;
    for (std::size_t a = 0; a < x; ++a)
        for (std::size_t b = 0; b < y; ++b)
            if (rng.coin(p)) e.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(x + b));
    return BipartiteGraph(x, y, e);
}

inline std::vector<std::vector<bool>> matrix(const BipartiteGraph & g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (auto [a, b] : g.edges()) m[a][b] = m[b][a] = true;
    return m;
}

/// Maximum matching size by trying every edge subset recursively.
inline std::size_t brute_matching_size(const std::vector<Edge> & edges) {
    std::size_t best = 0;
    std::set<Vertex> used;
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t size) {
        best = std::max(best, size);
        if (i == edges.size() || size + (edges.size() - i) <= best) return;
        auto [a, b] = edges[i];
        if (! used.count(a) && ! used.count(b)) {
            used.insert(a);
            used.insert(b);
            go(i + 1, size + 1);
            used.erase(a);
            used.erase(b);
        }
        go(i + 1, size);
    };
    go(0, 0);
    return best;
}

/// Edge-list walker: accepts a packing only if every cycle is a closed walk
/// along listed edges with no repeated vertex, long enough, and disjoint.
inline bool naive_accepts(const std::vector<Edge> & edges, std::size_t vertex_count, const std::vector<std::size_t> & lengths,
                          const std::vector<std::vector<Vertex>> & cycles) {
    if (cycles.size() != lengths.size()) return false;
    auto has_edge = [&](Vertex a, Vertex b) {
        for (auto [p, q] : edges)
            if ((p == a && q == b) || (p == b && q == a)) return true;
        return false;
    };
    std::set<Vertex> all;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        const auto & c = cycles[i];
        if (c.size() < lengths[i] || c.size() < 4 || c.size() % 2) return false;
        std::set<Vertex> mine(c.begin(), c.end());
        if (mine.size() != c.size()) return false;
        for (Vertex v : c) {
            if (v >= vertex_count || ! all.insert(v).second) return false;
        }
        for (std::size_t j = 0; j < c.size(); ++j)
            if (! has_edge(c[j], c[(j + 1) % c.size()])) return false;
    }
    return true;
}

/// Hamilton cycle of G[S] by plain DFS over an adjacency matrix.
inline bool hamiltonian(const std::vector<std::vector<bool>> & adj, std::uint32_t s) {
    std::vector<unsigned> vs;
    for (unsigned v = 0; v < adj.size(); ++v)
        if (s >> v & 1u) vs.push_back(v);
    if (vs.size() < 4) return false;
    const unsigned root = vs[0];
    std::vector<bool> used(adj.size(), false);
    used[root] = true;
    std::function<bool(unsigned, std::size_t)> go = [&](unsigned cur, std::size_t depth) {
        if (depth == vs.size()) return static_cast<bool>(adj[cur][root]);
        for (unsigned w : vs)
            if (! used[w] && adj[cur][w]) {
                used[w] = true;
                if (go(w, depth + 1)) return true;
                used[w] = false;
            }
        return false;
    };
    return go(root, 1);
}

/// Second oracle: table of "G[S] contains a cycle of length >= c" built from
/// Hamilton checks on balanced subsets, then a search over disjoint subsets
/// (a partition of V into the k cycle parts plus the unused rest).
class PartitionOracle {
public:
    explicit PartitionOracle(const BipartiteGraph & g) : g_(g), adj_(matrix(g)) {
        const std::size_t n = g.vertex_count();
        const std::uint32_t count = 1u << n;
        ham_.assign(count, false);
        for (std::uint32_t s = 0; s < count; ++s) {
            std::size_t xs = 0, ys = 0;
            for (unsigned v = 0; v < n; ++v)
                if (s >> v & 1u) (g.side(v) == Side::X ? xs : ys)++;
            if (xs == ys && xs >= 2) ham_[s] = hamiltonian(adj_, s);
        }
    }

    /// Largest cycle length inside S.
    std::size_t longest(std::uint32_t s) {
        auto it = longest_.find(s);
        if (it != longest_.end()) return it->second;
        std::size_t best = ham_[s] ? static_cast<std::size_t>(std::popcount(s)) : 0;
        for (unsigned v = 0; v < g_.vertex_count(); ++v)
            if (s >> v & 1u) best = std::max(best, longest(s & ~(1u << v)));
        return longest_[s] = best;
    }

    bool feasible(const std::vector<std::size_t> & lengths) {
        const std::uint32_t all = (1u << g_.vertex_count()) - 1;
        std::function<bool(std::size_t, std::uint32_t)> go = [&](std::size_t i, std::uint32_t free) {
            if (i == lengths.size()) return true;
            if (longest(free) < lengths[i]) return false;
            for (std::uint32_t part = free; part; part = (part - 1) & free)
                if (ham_[part] && static_cast<std::size_t>(std::popcount(part)) >= lengths[i] && go(i + 1, free & ~part))
                    return true;
            return false;
        };
        return go(0, all);
    }

private:
    const BipartiteGraph & g_;
    std::vector<std::vector<bool>> adj_;
    std::vector<bool> ham_;
    std::map<std::uint32_t, std::size_t> longest_;
};

/// Every simple cycle of G[S] (each once, as a vertex set) with its length.
inline std::vector<std::pair<std::uint64_t, std::size_t>> all_cycle_sets(const BipartiteGraph & g, const std::vector<Vertex> & s) {
    auto adj = matrix(g);
    std::set<std::pair<std::uint64_t, std::size_t>> found;
    std::vector<Vertex> path;
    std::vector<bool> used(g.vertex_count(), false);
    std::function<void(Vertex)> go = [&](Vertex root) {
        const Vertex cur = path.back();
        if (path.size() >= 4 && adj[cur][root]) {
            std::uint64_t mask = 0;
            for (Vertex v : path) mask |= std::uint64_t{1} << v;
            found.insert({mask, path.size()});
        }
        for (Vertex w : s)
            if (w > root && ! used[w] && adj[cur][w]) {
                used[w] = true;
                path.push_back(w);
                go(root);
                path.pop_back();
                used[w] = false;
            }
    };
    for (Vertex r : s) {
        used[r] = true;
        path = {r};
        go(r);
        used[r] = false;
    }
    return {found.begin(), found.end()};
}

/// Longest simple path length (vertices) in G[S] by exhaustive DFS.
inline std::size_t longest_path(const BipartiteGraph & g, const std::vector<Vertex> & s) {
    auto adj = matrix(g);
    std::size_t best = s.empty() ? 0 : 1;
    std::vector<bool> used(g.vertex_count(), false);
    std::function<void(Vertex, std::size_t)> go = [&](Vertex cur, std::size_t len) {
        best = std::max(best, len);
        for (Vertex w : s)
            if (! used[w] && adj[cur][w]) {
                used[w] = true;
                go(w, len + 1);
                used[w] = false;
            }
    };
    for (Vertex r : s) {
        used[r] = true;
        go(r, 1);
        used[r] = false;
    }
    return best;
}

}
