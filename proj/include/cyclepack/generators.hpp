#pragma once

#include <cyclepack/graph.hpp>
#include <cyclepack/profile.hpp>
#include <cyclepack/random.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cyclepack {

inline BipartiteGraph gen_complete(std::size_t m) {
    if (m == 0) throw std::invalid_argument("gen_complete requires m >= 1");
    std::vector<Edge> e;
    e.reserve(m * m);
    for (Vertex x = 0; x < m; ++x)
        for (Vertex y = 0; y < m; ++y) e.emplace_back(x, static_cast<Vertex>(m + y));
    return BipartiteGraph(m, m, e);
}

/// Random host with min degree >= delta. The base is `delta` edge-disjoint
/// perfect matchings between the sides (the smaller side padded with virtual
/// vertices whose edges are dropped); every other pair becomes an edge with
/// probability `fill`. Same arguments give the same graph.
inline BipartiteGraph gen_random_mindeg(std::size_t x_size, std::size_t y_size, std::size_t delta, std::uint64_t seed,
                                        double fill = 0.5) {
    if (delta > std::min(x_size, y_size))
        throw std::invalid_argument("gen_random_mindeg: delta " + std::to_string(delta) + " exceeds the smaller side");
    if (x_size + y_size == 0) throw std::invalid_argument("gen_random_mindeg: empty graph requested");
    if (fill < 0.0 || fill > 1.0) throw std::invalid_argument("gen_random_mindeg: fill probability outside [0,1]");

    Rng rng(seed);
    const std::size_t m = std::max(x_size, y_size);

    for (int attempt = 0;; ++attempt) {
        std::vector<std::vector<bool>> adj(x_size, std::vector<bool>(y_size, false));

        std::vector<std::size_t> px(m), py(m);
        for (std::size_t i = 0; i < m; ++i) px[i] = py[i] = i;
        rng.shuffle(px);
        rng.shuffle(py);
        // Matching j pairs px[i] with py[(i + j) mod m]; distinct j give disjoint matchings.
        for (std::size_t j = 0; j < delta; ++j)
            for (std::size_t i = 0; i < m; ++i) {
                std::size_t a = px[i], b = py[(i + j) % m];
                if (a < x_size && b < y_size) adj[a][b] = true;
            }

        for (std::size_t a = 0; a < x_size; ++a)
            for (std::size_t b = 0; b < y_size; ++b)
                if (! adj[a][b] && rng.coin(fill)) adj[a][b] = true;

        // Unequal sides can leave vertices of the larger side short; retry a
        // few times, then top up deterministically from the stream.
        auto short_vertices = [&] {
            bool any = false;
            for (std::size_t a = 0; a < x_size; ++a)
                any |= static_cast<std::size_t>(std::count(adj[a].begin(), adj[a].end(), true)) < delta;
            for (std::size_t b = 0; b < y_size; ++b) {
                std::size_t d = 0;
                for (std::size_t a = 0; a < x_size; ++a) d += adj[a][b];
                any |= d < delta;
            }
            return any;
        };
        if (short_vertices()) {
            if (attempt < 64) continue;
            for (std::size_t b = 0; b < y_size; ++b) {
                std::vector<std::size_t> free;
                std::size_t d = 0;
                for (std::size_t a = 0; a < x_size; ++a) {
                    if (adj[a][b]) ++d;
                    else free.push_back(a);
                }
                rng.shuffle(free);
                for (std::size_t i = 0; d < delta; ++i, ++d) adj[free[i]][b] = true;
            }
            for (std::size_t a = 0; a < x_size; ++a) {
                std::vector<std::size_t> free;
                std::size_t d = 0;
                for (std::size_t b = 0; b < y_size; ++b) {
                    if (adj[a][b]) ++d;
                    else free.push_back(b);
                }
                rng.shuffle(free);
                for (std::size_t i = 0; d < delta; ++i, ++d) adj[a][free[i]] = true;
            }
        }

        std::vector<Edge> edges;
        for (std::size_t a = 0; a < x_size; ++a)
            for (std::size_t b = 0; b < y_size; ++b)
                if (adj[a][b]) edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(x_size + b));
        return BipartiteGraph(x_size, y_size, edges);
    }
}

struct SharpnessInstance {
    BipartiteGraph graph;
    CycleProfile profile;  ///< (k-1) x 4 plus one 6, conjecture mode
    Vertex u;              ///< X side, adjacent to Y1 and v
    Vertex v;              ///< Y side, adjacent to X2 and u
};

/// The 4k+2 vertex graph with minimum degree k+1 that has no vertex-disjoint
/// packing of (k-1) four-cycles and one six-cycle.
///
/// X = X1 (0..k-1), X2 (k..2k-1), u (2k); Y = Y1, Y2, v in the same pattern
/// starting at 2k+1. X1-Y1 and X2-Y2 are complete, u sees Y1 and v, v sees X2
/// and u, and X1[i] is matched to Y2[i].
inline SharpnessInstance gen_sharpness(std::size_t k) {
    if (k == 0 || k % 2 != 0) throw std::invalid_argument("gen_sharpness requires an even k >= 2");
    const std::size_t side = 2 * k + 1;
    const auto x1 = [](std::size_t i) { return static_cast<Vertex>(i); };
    const auto x2 = [k](std::size_t i) { return static_cast<Vertex>(k + i); };
    const auto y1 = [side](std::size_t i) { return static_cast<Vertex>(side + i); };
    const auto y2 = [side, k](std::size_t i) { return static_cast<Vertex>(side + k + i); };
    const auto u = static_cast<Vertex>(2 * k);
    const auto v = static_cast<Vertex>(side + 2 * k);

    std::vector<Edge> e;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            e.emplace_back(x1(i), y1(j));
            e.emplace_back(x2(i), y2(j));
        }
    for (std::size_t i = 0; i < k; ++i) {
        e.emplace_back(u, y1(i));
        e.emplace_back(x2(i), v);
        e.emplace_back(x1(i), y2(i));
    }
    e.emplace_back(u, v);

    std::vector<std::size_t> lengths(k - 1, 4);
    lengths.push_back(6);
    return {BipartiteGraph(side, side, e), make_profile(lengths, Mode::Conjecture), u, v};
}

}
