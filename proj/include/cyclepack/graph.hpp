#pragma once

#include <cyclepack/vertex_set.hpp>

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cyclepack {

enum class Side { X, Y };

using Edge = std::pair<Vertex, Vertex>;

/// Bipartite host graph with a fixed bipartition. X vertices are 0..x_size-1,
/// Y vertices are x_size..x_size+y_size-1. Immutable after construction.
class BipartiteGraph {
public:
    BipartiteGraph() = default;

    /// Throws std::invalid_argument on intra-side edges, loops, duplicates or
    /// out-of-range ids. Edges may be given with either endpoint first.
    BipartiteGraph(std::size_t x_size, std::size_t y_size, std::span<const Edge> edges)
        : x_size_(x_size), y_size_(y_size), adjacency_(x_size + y_size, VertexSet(x_size + y_size)) {
        for (auto [a, b] : edges) {
            if (a >= vertex_count() || b >= vertex_count())
                throw std::invalid_argument("edge endpoint out of range: " + describe(a, b));
            if (side(a) == side(b))
                throw std::invalid_argument("edge joins two vertices of the same side: " + describe(a, b));
            if (adjacency_[a].contains(b))
                throw std::invalid_argument("duplicate edge: " + describe(a, b));
            adjacency_[a].insert(b);
            adjacency_[b].insert(a);
            ++edge_count_;
        }
    }

    BipartiteGraph(std::size_t x_size, std::size_t y_size, const std::vector<Edge> & edges)
        : BipartiteGraph(x_size, y_size, std::span<const Edge>(edges)) {}

    std::size_t x_size() const { return x_size_; }
    std::size_t y_size() const { return y_size_; }
    std::size_t vertex_count() const { return x_size_ + y_size_; }
    std::size_t edge_count() const { return edge_count_; }

    bool valid(Vertex v) const { return v < vertex_count(); }

    Side side(Vertex v) const { return v < x_size_ ? Side::X : Side::Y; }

    const VertexSet & neighbors(Vertex v) const {
        require(v);
        return adjacency_[v];
    }

    bool adjacent(Vertex a, Vertex b) const {
        require(a);
        return adjacency_[a].contains(b);
    }

    VertexSet vertices() const { return VertexSet::full(vertex_count()); }

    VertexSet side_set(Side s) const {
        VertexSet r(vertex_count());
        auto [lo, hi] = s == Side::X ? std::pair{std::size_t{0}, x_size_} : std::pair{x_size_, vertex_count()};
        for (std::size_t v = lo; v < hi; ++v) r.insert(static_cast<Vertex>(v));
        return r;
    }

    VertexSet empty_set() const { return VertexSet(vertex_count()); }

    /// All edges as (x, y) pairs in ascending order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (Vertex x = 0; x < x_size_; ++x)
            for (Vertex y : adjacency_[x]) out.emplace_back(x, y);
        return out;
    }

    void require(Vertex v) const {
        if (! valid(v)) throw std::invalid_argument("invalid vertex id " + std::to_string(v));
    }

    friend bool operator==(const BipartiteGraph &, const BipartiteGraph &) = default;

private:
    static std::string describe(Vertex a, Vertex b) { return std::to_string(a) + " " + std::to_string(b); }

    std::size_t x_size_ = 0;
    std::size_t y_size_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<VertexSet> adjacency_;
};

inline std::size_t degree(const BipartiteGraph & g, Vertex v) { return g.neighbors(v).count(); }

/// d(v, S) = |N(v) ∩ S|.
inline std::size_t degree_in(const BipartiteGraph & g, Vertex v, const VertexSet & s) {
    return g.neighbors(v).intersection_count(s);
}

inline std::size_t min_degree(const BipartiteGraph & g) {
    if (g.vertex_count() == 0) throw std::invalid_argument("min_degree of a graph with no vertices");
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (Vertex v = 0; v < g.vertex_count(); ++v) best = std::min(best, degree(g, v));
    return best;
}

/// G[S]: neighbourhood queries restricted to a vertex subset. Holds a
/// reference to the host graph, which must outlive the view.
class InducedView {
public:
    InducedView(const BipartiteGraph & g, VertexSet s) : g_(&g), members_(std::move(s)) {
        if (members_.universe() != g.vertex_count()) throw std::invalid_argument("vertex set does not belong to graph");
    }

    const BipartiteGraph & host() const { return *g_; }
    const VertexSet & vertices() const { return members_; }
    bool contains(Vertex v) const { return members_.contains(v); }
    std::size_t vertex_count() const { return members_.count(); }
    Side side(Vertex v) const { return g_->side(v); }

    VertexSet neighbors(Vertex v) const {
        require(v);
        return g_->neighbors(v) & members_;
    }

    std::size_t degree(Vertex v) const {
        require(v);
        return g_->neighbors(v).intersection_count(members_);
    }

    std::size_t degree_in(Vertex v, const VertexSet & s) const { return (g_->neighbors(v) & members_).intersection_count(s); }

    bool adjacent(Vertex a, Vertex b) const { return contains(a) && contains(b) && g_->adjacent(a, b); }

    std::size_t edge_count() const {
        std::size_t e = 0;
        for (Vertex v : members_)
            if (g_->side(v) == Side::X) e += degree(v);
        return e;
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (Vertex v : members_)
            if (g_->side(v) == Side::X)
                for (Vertex w : neighbors(v)) out.emplace_back(v, w);
        return out;
    }

private:
    void require(Vertex v) const {
        if (! contains(v)) throw std::invalid_argument("vertex " + std::to_string(v) + " not in induced view");
    }

    const BipartiteGraph * g_;
    VertexSet members_;
};

inline InducedView induced(const BipartiteGraph & g, const VertexSet & s) { return InducedView(g, s); }

/// |E(G[S])|.
inline std::size_t induced_edge_count(const BipartiteGraph & g, const VertexSet & s) {
    std::size_t e = 0;
    for (Vertex v : s)
        if (g.side(v) == Side::X) e += degree_in(g, v, s);
    return e;
}

}
