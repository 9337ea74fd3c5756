#pragma once

#include <cyclepack/graph.hpp>

#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace cyclepack {

/// Symmetric partner map over the vertex ids of a host graph.
class Matching {
public:
    static constexpr Vertex none = std::numeric_limits<Vertex>::max();

    Matching() = default;
    explicit Matching(std::size_t universe) : partner_(universe, none) {}

    std::size_t universe() const { return partner_.size(); }
    bool matched(Vertex v) const { return v < partner_.size() && partner_[v] != none; }
    Vertex partner(Vertex v) const { return v < partner_.size() ? partner_[v] : none; }
    std::size_t size() const { return size_; }

    void add(Vertex a, Vertex b) {
        if (matched(a) || matched(b)) throw std::logic_error("vertex already matched");
        partner_[a] = b;
        partner_[b] = a;
        ++size_;
    }

    void remove(Vertex a) {
        if (! matched(a)) return;
        partner_[partner_[a]] = none;
        partner_[a] = none;
        --size_;
    }

    bool contains_edge(Vertex a, Vertex b) const { return matched(a) && partner_[a] == b; }

    /// Matched pairs as (x, y), ascending by x.
    std::vector<Edge> pairs(const BipartiteGraph & g) const {
        std::vector<Edge> out;
        for (Vertex v = 0; v < partner_.size(); ++v)
            if (partner_[v] != none && g.side(v) == Side::X) out.emplace_back(v, partner_[v]);
        return out;
    }

private:
    std::vector<Vertex> partner_;
    std::size_t size_ = 0;
};

/// Maximum-cardinality matching of G[S] by Hopcroft-Karp phases. Vertices and
/// neighbours are scanned in ascending id order, so the result is
/// deterministic.
inline Matching max_matching(const InducedView & view) {
    const auto & g = view.host();
    const std::size_t n = g.vertex_count();
    std::vector<Vertex> left;
    for (Vertex v : view.vertices())
        if (g.side(v) == Side::X) left.push_back(v);

    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
    std::vector<Vertex> mate(n, Matching::none);
    std::vector<std::size_t> dist(n, inf);
    std::vector<std::vector<Vertex>> nbrs(n);
    for (Vertex x : left) nbrs[x] = view.neighbors(x).to_vector();

    auto bfs = [&] {
        std::queue<Vertex> q;
        bool found = false;
        for (Vertex x : left) {
            dist[x] = mate[x] == Matching::none ? 0 : inf;
            if (dist[x] == 0) q.push(x);
        }
        while (! q.empty()) {
            Vertex x = q.front();
            q.pop();
            for (Vertex y : nbrs[x]) {
                Vertex nx = mate[y];
                if (nx == Matching::none)
                    found = true;
                else if (dist[nx] == inf) {
                    dist[nx] = dist[x] + 1;
                    q.push(nx);
                }
            }
        }
        return found;
    };

    std::vector<std::size_t> cursor(n, 0);
    auto dfs = [&](auto && self, Vertex x) -> bool {
        for (auto & i = cursor[x]; i < nbrs[x].size(); ++i) {
            Vertex y = nbrs[x][i];
            Vertex nx = mate[y];
            if (nx == Matching::none || (dist[nx] == dist[x] + 1 && self(self, nx))) {
                mate[x] = y;
                mate[y] = x;
                return true;
            }
        }
        dist[x] = inf;
        return false;
    };

    while (bfs()) {
        std::fill(cursor.begin(), cursor.end(), 0);
        for (Vertex x : left)
            if (mate[x] == Matching::none) dfs(dfs, x);
    }

    Matching m(n);
    for (Vertex x : left)
        if (mate[x] != Matching::none) m.add(x, mate[x]);
    return m;
}

/// Maximal M-alternating path in G[S] from `start`, found by depth-first
/// extension in ascending neighbour order. When `first_edge_in_m` is set the
/// first edge is the matching edge at `start`. The longest leaf seen within
/// `expansion_cap` node expansions is returned; every leaf is non-extendable.
inline std::vector<Vertex> longest_alternating_path(const InducedView & view, const Matching & m, Vertex start,
                                                    bool first_edge_in_m, std::size_t expansion_cap = 20000) {
    if (! view.contains(start)) throw std::invalid_argument("alternating path start not in view");
    if (first_edge_in_m && ! (m.matched(start) && view.contains(m.partner(start))))
        throw std::invalid_argument("alternating path must start with a matching edge but start is unmatched");

    const auto & g = view.host();
    std::vector<Vertex> path{start}, best;
    VertexSet on_path(g.vertex_count());
    on_path.insert(start);
    std::size_t expansions = 0;

    auto next_candidates = [&](Vertex cur, bool want_matching) {
        std::vector<Vertex> out;
        if (want_matching) {
            Vertex p = m.partner(cur);
            if (p != Matching::none && view.contains(p) && ! on_path.contains(p)) out.push_back(p);
        } else {
            for (Vertex w : view.neighbors(cur))
                if (! on_path.contains(w) && ! m.contains_edge(cur, w)) out.push_back(w);
        }
        return out;
    };

    auto dfs = [&](auto && self, bool want_matching) -> void {
        ++expansions;
        auto cand = next_candidates(path.back(), want_matching);
        if (cand.empty()) {
            if (path.size() > best.size()) best = path;
            return;
        }
        bool first = true;
        for (Vertex w : cand) {
            if (! first && expansions >= expansion_cap) return;
            first = false;
            path.push_back(w);
            on_path.insert(w);
            self(self, ! want_matching);
            on_path.erase(w);
            path.pop_back();
        }
    };
    dfs(dfs, first_edge_in_m);
    return best;
}

}
