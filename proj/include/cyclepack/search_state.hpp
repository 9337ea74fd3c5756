#pragma once

#include <cyclepack/graph.hpp>
#include <cyclepack/profile.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclepack {

/// Lexicographic search potential: fewer vertices on the fixed cycles first,
/// then a longer remainder path, then more edges induced inside the fixed
/// cycles. Larger is better.
struct Potential {
    long long neg_cycle_vertices = 0;  ///< -|G1|
    long long path_length = 0;         ///< |P|
    long long induced_edges = 0;       ///< beta(G1)

    auto operator<=>(const Potential &) const = default;

    std::string describe() const {
        return "(" + std::to_string(neg_cycle_vertices) + ", " + std::to_string(path_length) + ", " +
               std::to_string(induced_edges) + ")";
    }
};

/// Partial solution: k-1 fixed cycles, the remainder G2 they leave, and a
/// path in G2. The potential is maintained incrementally by the mutators and
/// can be recomputed with compute_potential().
struct SearchState {
    std::vector<std::vector<Vertex>> fixed_cycles;
    VertexSet remainder;
    std::vector<Vertex> path;
    Potential potential;

    const std::vector<Vertex> & cycle(std::size_t i) const { return fixed_cycles.at(i); }
};

inline VertexSet vertex_set_of(const BipartiteGraph & g, const std::vector<Vertex> & vs) {
    return VertexSet::of(g.vertex_count(), vs);
}

inline Potential compute_potential(const BipartiteGraph & g, const SearchState & st) {
    Potential p;
    for (const auto & c : st.fixed_cycles) {
        p.neg_cycle_vertices -= static_cast<long long>(c.size());
        p.induced_edges += static_cast<long long>(induced_edge_count(g, vertex_set_of(g, c)));
    }
    p.path_length = static_cast<long long>(st.path.size());
    return p;
}

inline SearchState make_state(const BipartiteGraph & g, std::vector<std::vector<Vertex>> fixed, std::vector<Vertex> path = {}) {
    SearchState st;
    st.fixed_cycles = std::move(fixed);
    st.remainder = g.vertices();
    for (const auto & c : st.fixed_cycles)
        for (Vertex v : c) {
            if (! st.remainder.contains(v)) throw std::invalid_argument("fixed cycles overlap at vertex " + std::to_string(v));
            st.remainder.erase(v);
        }
    for (Vertex v : path)
        if (! st.remainder.contains(v)) throw std::invalid_argument("path leaves the remainder at vertex " + std::to_string(v));
    st.path = std::move(path);
    st.potential = compute_potential(g, st);
    return st;
}

/// Replaces fixed cycle i, moving vertices between the cycle and the
/// remainder. The caller keeps the path inside the remainder.
inline void replace_cycle(const BipartiteGraph & g, SearchState & st, std::size_t i, std::vector<Vertex> next) {
    auto & cur = st.fixed_cycles.at(i);
    const auto old_set = vertex_set_of(g, cur);
    const auto new_set = vertex_set_of(g, next);
    st.remainder |= old_set;
    st.remainder -= new_set;
    st.potential.neg_cycle_vertices += static_cast<long long>(cur.size()) - static_cast<long long>(next.size());
    st.potential.induced_edges += static_cast<long long>(induced_edge_count(g, new_set)) -
                                  static_cast<long long>(induced_edge_count(g, old_set));
    cur = std::move(next);
}

inline void replace_path(SearchState & st, std::vector<Vertex> next) {
    st.path = std::move(next);
    st.potential.path_length = static_cast<long long>(st.path.size());
}

/// Successor and predecessor along a stored (oriented) cycle.
inline Vertex successor(const std::vector<Vertex> & cycle, Vertex v) {
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (cycle[i] == v) return cycle[(i + 1) % cycle.size()];
    throw std::invalid_argument("vertex not on cycle");
}

inline Vertex predecessor(const std::vector<Vertex> & cycle, Vertex v) {
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (cycle[i] == v) return cycle[(i + cycle.size() - 1) % cycle.size()];
    throw std::invalid_argument("vertex not on cycle");
}

/// The two distinguished fixed cycles and vertices used by the double
/// exchange. `q_index` is empty for two-part rebuilds between the remainder
/// and C*_p only.
struct ExchangeContext {
    std::size_t p_index = 0;
    std::optional<std::size_t> q_index;
    Vertex x_star = 0;  ///< on C*_p, the side opposite the partial endpoint
    Vertex y_star = 0;  ///< on C*_p, opposite side to x_star, not next to it on the cycle
};

}
