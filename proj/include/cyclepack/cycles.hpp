#pragma once

#include <cyclepack/graph.hpp>
#include <cyclepack/random.hpp>

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace cyclepack {

/// Exact search is limited to sets that fit one machine word.
inline constexpr std::size_t max_local_vertices = 64;

struct CycleSearchOptions {
    std::size_t max_len = 0;       ///< 0 means |S|
    Rng * order = nullptr;         ///< randomises the root/neighbour scan order when set
    std::size_t node_budget = 0;   ///< 0 means unlimited (exact)
    bool * exhausted = nullptr;    ///< set when the budget cut the search short
};

namespace detail {

/// G[S] relabelled onto 0..m-1 with word-sized adjacency masks.
struct LocalGraph {
    std::vector<Vertex> ids;
    std::vector<std::uint64_t> adj;
    std::uint64_t x_mask = 0;

    LocalGraph(const BipartiteGraph & g, const VertexSet & s, Rng * order) {
        ids = s.to_vector();
        if (ids.size() > max_local_vertices) throw std::invalid_argument("exact cycle search limited to 64 vertices");
        if (order) order->shuffle(ids);
        std::vector<int> local(g.vertex_count(), -1);
        for (std::size_t i = 0; i < ids.size(); ++i) local[ids[i]] = static_cast<int>(i);
        adj.assign(ids.size(), 0);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (g.side(ids[i]) == Side::X) x_mask |= std::uint64_t{1} << i;
            for (Vertex w : g.neighbors(ids[i]))
                if (local[w] >= 0) adj[i] |= std::uint64_t{1} << local[w];
        }
    }

    std::size_t size() const { return ids.size(); }
};

struct StateHash {
    std::size_t operator()(const std::pair<std::uint64_t, unsigned> & k) const {
        return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ULL + k.second);
    }
};

/// Cycle of exactly `len` vertices whose smallest local index is `root`.
/// Failed (endpoint, visited) states are memoised; the memo is capped.
inline bool cycle_of_length(const LocalGraph & lg, unsigned root, std::size_t len, std::vector<unsigned> & out,
                            std::size_t & nodes, std::size_t budget) {
    const std::size_t m = lg.size();
    const std::uint64_t all = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    const std::uint64_t above = root + 1 >= 64 ? 0 : (~std::uint64_t{0} << (root + 1)) & all;
    const std::uint64_t allowed = above | (std::uint64_t{1} << root);
    if (static_cast<std::size_t>(std::popcount(allowed)) < len) return false;
    const auto xs = static_cast<std::size_t>(std::popcount(allowed & lg.x_mask));
    const auto ys = static_cast<std::size_t>(std::popcount(allowed & ~lg.x_mask));
    if (xs < len / 2 || ys < len / 2) return false;

    std::unordered_set<std::pair<std::uint64_t, unsigned>, StateHash> dead;
    constexpr std::size_t memo_cap = 1u << 20;
    const std::uint64_t root_bit = std::uint64_t{1} << root;
    std::vector<unsigned> path{root};

    auto dfs = [&](auto && self, unsigned cur, std::uint64_t visited, std::size_t depth) -> bool {
        if (budget && ++nodes > budget) return false;
        if (depth == len) return (lg.adj[cur] & root_bit) != 0;
        if (dead.count({visited, cur})) return false;
        std::uint64_t cand = lg.adj[cur] & above & ~visited;
        // The last vertex must close back to the root.
        if (depth + 1 == len) {
            std::uint64_t closing = 0;
            for (std::uint64_t c = cand; c; c &= c - 1) {
                unsigned w = static_cast<unsigned>(std::countr_zero(c));
                if (lg.adj[w] & root_bit) closing |= std::uint64_t{1} << w;
            }
            cand = closing;
        }
        for (; cand; cand &= cand - 1) {
            unsigned w = static_cast<unsigned>(std::countr_zero(cand));
            path.push_back(w);
            if (self(self, w, visited | (std::uint64_t{1} << w), depth + 1)) return true;
            path.pop_back();
            if (budget && nodes > budget) return false;
        }
        if (dead.size() < memo_cap) dead.insert({visited, cur});
        return false;
    };

    if (dfs(dfs, root, root_bit, 1)) {
        out = path;
        return true;
    }
    return false;
}

}

/// Shortest cycle of G[S] with at least `min_len` vertices (and at most
/// options.max_len), as a closed vertex sequence without the repeated first
/// vertex. Exact when no node budget is given.
inline std::optional<std::vector<Vertex>> find_cycle(const BipartiteGraph & g, const VertexSet & s, std::size_t min_len,
                                                      CycleSearchOptions options = {}) {
    const std::size_t m = s.count();
    std::size_t hi = options.max_len ? std::min(options.max_len, m) : m;
    std::size_t lo = std::max<std::size_t>(min_len, 4);
    if (lo % 2) ++lo;
    if (options.exhausted) *options.exhausted = false;
    if (lo > hi) return std::nullopt;

    detail::LocalGraph lg(g, s, options.order);
    std::size_t nodes = 0;
    std::vector<unsigned> local;
    for (std::size_t len = lo; len <= hi; len += 2) {
        for (unsigned root = 0; root + len <= m; ++root) {
            if (detail::cycle_of_length(lg, root, len, local, nodes, options.node_budget)) {
                std::vector<Vertex> out;
                out.reserve(local.size());
                for (unsigned i : local) out.push_back(lg.ids[i]);
                return out;
            }
            if (options.node_budget && nodes > options.node_budget) {
                if (options.exhausted) *options.exhausted = true;
                return std::nullopt;
            }
        }
    }
    return std::nullopt;
}

/// Hamilton cycle of G[S], if one exists.
inline std::optional<std::vector<Vertex>> find_spanning_cycle(const BipartiteGraph & g, const VertexSet & s,
                                                               CycleSearchOptions options = {}) {
    const std::size_t m = s.count();
    if (m < 4) return std::nullopt;
    options.max_len = m;
    return find_cycle(g, s, m, options);
}

/// True when `cycle` is a simple cycle of G (length >= 4, consecutive
/// vertices adjacent, closing edge present).
inline bool is_cycle(const BipartiteGraph & g, const std::vector<Vertex> & cycle) {
    if (cycle.size() < 4) return false;
    VertexSet seen(g.vertex_count());
    for (Vertex v : cycle) {
        if (! g.valid(v) || seen.contains(v)) return false;
        seen.insert(v);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (! g.adjacent(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
    return true;
}

/// True when `path` is a simple path of G.
inline bool is_path(const BipartiteGraph & g, const std::vector<Vertex> & path) {
    VertexSet seen(g.vertex_count());
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (! g.valid(path[i]) || seen.contains(path[i])) return false;
        seen.insert(path[i]);
        if (i && ! g.adjacent(path[i - 1], path[i])) return false;
    }
    return true;
}

}
