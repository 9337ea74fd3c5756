#pragma once

#include <cyclepack/cycles.hpp>
#include <cyclepack/graph.hpp>
#include <cyclepack/matching.hpp>
#include <cyclepack/oracle.hpp>
#include <cyclepack/packing.hpp>
#include <cyclepack/profile.hpp>
#include <cyclepack/random.hpp>
#include <cyclepack/search_state.hpp>
#include <cyclepack/verifier.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cyclepack {

/// Sets at most this large are searched exactly inside the move engine.
inline constexpr std::size_t exact_move_limit = 24;

enum class Outcome { Packing, Infeasible, Unknown };

inline std::string_view to_string(Outcome o) {
    switch (o) {
        case Outcome::Packing: return "packing";
        case Outcome::Infeasible: return "infeasible";
        case Outcome::Unknown: return "unknown";
    }
    return "?";
}

enum class MoveKind { Shrink, ExtendPath, ExchangeOne, CloseCycle, DoubleExchange, Restart, OracleFallback };
inline constexpr std::size_t move_kind_count = 7;

inline std::string_view to_string(MoveKind m) {
    constexpr std::array<std::string_view, move_kind_count> names{
        "shrink", "extend_path", "exchange_one", "close_cycle", "double_exchange", "restart", "oracle_fallback"};
    return names[static_cast<std::size_t>(m)];
}

struct MoveCounts {
    std::array<std::size_t, move_kind_count> counts{};
    std::size_t & operator[](MoveKind m) { return counts[static_cast<std::size_t>(m)]; }
    std::size_t operator[](MoveKind m) const { return counts[static_cast<std::size_t>(m)]; }
    MoveCounts & operator+=(const MoveCounts & o) {
        for (std::size_t i = 0; i < move_kind_count; ++i) counts[i] += o.counts[i];
        return *this;
    }
};

struct TraceEntry {
    MoveKind kind;
    Potential before;
    Potential after;
};

struct PackOptions {
    std::size_t budget = 10000;   ///< move iterations per attempt
    std::uint64_t seed = 0;
    std::size_t restarts = 8;
    std::size_t oracle_limit = default_oracle_limit;
    bool oracle_fallback = true;
    std::vector<TraceEntry> * trace = nullptr;
    bool perturb_first = false;   ///< randomise attempt 0 as well (used when re-peeling a prefix)
};

struct PackStats {
    MoveCounts moves;
    bool oracle_used = false;
    std::size_t restarts_used = 0;
    std::size_t endpoint_bound_checks = 0;
    std::size_t endpoint_bound_violations = 0;
};

struct PackResult {
    Outcome outcome = Outcome::Unknown;
    std::optional<Packing> packing;
    PackStats stats;
};

namespace detail {

inline std::size_t side_count(const BipartiteGraph & g, const VertexSet & s, Side side) {
    std::size_t c = 0;
    for (Vertex v : s) c += g.side(v) == side;
    return c;
}

/// Cheap necessary condition for G[S] to hold a cycle of length >= c.
inline bool could_hold_cycle(const BipartiteGraph & g, const VertexSet & s, std::size_t c) {
    return s.count() >= c && side_count(g, s, Side::X) >= c / 2 && side_count(g, s, Side::Y) >= c / 2;
}

/// Cycle of length >= c inside S: exact up to the move limit, budgeted above
/// it, and not attempted past a machine word.
inline std::optional<std::vector<Vertex>> cycle_within(const BipartiteGraph & g, const VertexSet & s, std::size_t c,
                                                        Rng * order = nullptr) {
    if (! could_hold_cycle(g, s, c)) return std::nullopt;
    const std::size_t m = s.count();
    if (m > max_local_vertices) return std::nullopt;
    CycleSearchOptions opt;
    opt.order = order;
    if (m > exact_move_limit) opt.node_budget = 200000;
    return find_cycle(g, s, c, opt);
}

inline std::vector<Vertex> arc(const std::vector<Vertex> & cyc, std::size_t from, std::size_t to) {
    std::vector<Vertex> out;
    for (std::size_t i = from;; i = (i + 1) % cyc.size()) {
        out.push_back(cyc[i]);
        if (i == to) break;
    }
    return out;
}

/// Path candidates grown inside G2 - V(P) from a maximum matching, as in the
/// alternating-path argument: from each unmatched vertex a maximal
/// alternating path starting with a non-matching edge, from each matched
/// vertex one starting with its matching edge. Duplicates are dropped.
inline std::vector<std::vector<Vertex>> alternating_segments(const BipartiteGraph & g, const VertexSet & off) {
    std::vector<std::vector<Vertex>> out;
    if (off.empty()) return out;
    InducedView view(g, off);
    Matching m = max_matching(view);
    for (Vertex v : off) {
        auto q = longest_alternating_path(view, m, v, m.matched(v), 2000);
        if (q.empty()) continue;
        if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(std::move(q));
    }
    return out;
}

inline std::vector<Vertex> without_vertex_keep_longer(const std::vector<Vertex> & path, Vertex u) {
    auto it = std::find(path.begin(), path.end(), u);
    if (it == path.end()) return path;
    std::vector<Vertex> head(path.begin(), it), tail(it + 1, path.end());
    return head.size() >= tail.size() ? head : tail;
}

}

/// Shrinking: a fixed cycle longer than its target is replaced
/// by a shorter cycle (still at least the target) on its own vertices plus at
/// most one vertex u of the remainder, where u (or a cycle vertex) sees at
/// least c/2 vertices of the cycle. Strictly decreases |G1|.
inline std::optional<SearchState> move_shrink(const SearchState & st, const BipartiteGraph & g, const CycleProfile & prof) {
    for (std::size_t i = 0; i < st.fixed_cycles.size(); ++i) {
        const auto & cyc = st.fixed_cycles[i];
        const std::size_t len = cyc.size(), c = prof[i];
        if (len <= c) continue;
        const VertexSet cset = vertex_set_of(g, cyc);

        std::optional<std::vector<Vertex>> best;
        std::size_t best_edges = 0;
        auto consider = [&](std::vector<Vertex> cand) {
            if (cand.size() < c || cand.size() >= len) return;
            std::size_t e = induced_edge_count(g, vertex_set_of(g, cand));
            if (! best || cand.size() < best->size() || (cand.size() == best->size() && e > best_edges)) {
                best = std::move(cand);
                best_edges = e;
            }
        };

        // Chords of the cycle from a vertex that sees c/2 cycle vertices.
        for (std::size_t a = 0; a < len; ++a) {
            if (degree_in(g, cyc[a], cset) < c / 2) continue;
            for (std::size_t b = 0; b < len; ++b) {
                if (b == a || b == (a + 1) % len || a == (b + 1) % len) continue;
                if (! g.adjacent(cyc[a], cyc[b])) continue;
                consider(detail::arc(cyc, a, b));
            }
        }
        // A remainder vertex with c/2 neighbours on the cycle plus one arc.
        std::vector<Vertex> apexes;
        for (Vertex u : st.remainder)
            if (degree_in(g, u, cset) >= c / 2) apexes.push_back(u);
        for (Vertex u : apexes) {
            std::vector<std::size_t> pos;
            for (std::size_t a = 0; a < len; ++a)
                if (g.adjacent(u, cyc[a])) pos.push_back(a);
            for (std::size_t a : pos)
                for (std::size_t b : pos) {
                    if (a == b) continue;
                    auto cand = detail::arc(cyc, a, b);
                    cand.push_back(u);
                    consider(std::move(cand));
                }
        }
        if (! best && len + 1 <= exact_move_limit) {
            std::vector<VertexSet> pools;
            if (std::any_of(cyc.begin(), cyc.end(), [&](Vertex v) { return degree_in(g, v, cset) >= c / 2; })) pools.push_back(cset);
            for (Vertex u : apexes) {
                auto s = cset;
                s.insert(u);
                pools.push_back(s);
            }
            for (const auto & s : pools) {
                CycleSearchOptions opt;
                opt.max_len = len - 1;
                if (auto found = find_cycle(g, s, c, opt)) consider(std::move(*found));
            }
        }
        if (! best) continue;

        SearchState next = st;
        std::vector<Vertex> path = st.path;
        for (Vertex v : *best)
            if (! cset.contains(v)) path = detail::without_vertex_keep_longer(path, v);
        replace_cycle(g, next, i, std::move(*best));
        replace_path(next, std::move(path));
        return next;
    }
    return std::nullopt;
}

/// Strictly lengthens the remainder path: greedy endpoint extension, one
/// rotation followed by extension, or splicing a matching-derived alternating
/// segment of G2 - V(P) into or onto P.
inline std::optional<SearchState> move_extend_path(const SearchState & st, const BipartiteGraph & g) {
    if (st.path.empty()) {
        if (st.remainder.empty()) return std::nullopt;
        SearchState next = st;
        replace_path(next, {st.remainder.first()});
        return next;
    }

    VertexSet on_path = vertex_set_of(g, st.path);
    VertexSet off = st.remainder - on_path;
    if (off.empty()) return std::nullopt;

    auto grow = [&](std::vector<Vertex> path) {
        VertexSet used = vertex_set_of(g, path);
        for (bool moved = true; moved;) {
            moved = false;
            for (int end = 0; end < 2 && ! moved; ++end) {
                Vertex tip = end == 0 ? path.back() : path.front();
                VertexSet cand = (g.neighbors(tip) & st.remainder) - used;
                if (cand.empty()) continue;
                Vertex w = cand.first();
                if (end == 0)
                    path.push_back(w);
                else
                    path.insert(path.begin(), w);
                used.insert(w);
                moved = true;
            }
        }
        return path;
    };

    const std::size_t s = st.path.size();
    auto accept = [&](std::vector<Vertex> path) -> std::optional<SearchState> {
        if (path.size() <= s) return std::nullopt;
        SearchState next = st;
        replace_path(next, std::move(path));
        return next;
    };

    if (auto r = accept(grow(st.path))) return r;

    // Rotation: an endpoint adjacent to an inner vertex exposes a new endpoint.
    for (int end = 0; end < 2; ++end) {
        std::vector<Vertex> p = st.path;
        if (end == 1) std::reverse(p.begin(), p.end());
        const Vertex tip = p.back();
        for (std::size_t i = 0; i + 2 < s; ++i) {
            if (! g.adjacent(tip, p[i])) continue;
            std::vector<Vertex> rot(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i + 1));
            rot.insert(rot.end(), p.rbegin(), p.rbegin() + static_cast<std::ptrdiff_t>(s - i - 1));
            if (! (g.neighbors(rot.back()) & off).empty())
                if (auto r = accept(grow(rot))) return r;
        }
    }

    // Splice alternating segments of G2 - V(P).
    std::optional<std::vector<Vertex>> best;
    auto offer = [&](std::vector<Vertex> cand) {
        if (cand.size() > s && (! best || cand.size() > best->size())) best = std::move(cand);
    };
    for (auto seg : detail::alternating_segments(g, off)) {
        for (int flip = 0; flip < 2; ++flip) {
            if (flip) std::reverse(seg.begin(), seg.end());
            const Vertex head = seg.front(), tail = seg.back();
            for (std::size_t i = 0; i < s; ++i) {
                if (! g.adjacent(st.path[i], head)) continue;
                if (i + 1 < s && g.adjacent(st.path[i + 1], tail)) {
                    std::vector<Vertex> cand(st.path.begin(), st.path.begin() + static_cast<std::ptrdiff_t>(i + 1));
                    cand.insert(cand.end(), seg.begin(), seg.end());
                    cand.insert(cand.end(), st.path.begin() + static_cast<std::ptrdiff_t>(i + 1), st.path.end());
                    offer(std::move(cand));
                }
                std::vector<Vertex> prefix(st.path.begin(), st.path.begin() + static_cast<std::ptrdiff_t>(i + 1));
                prefix.insert(prefix.end(), seg.begin(), seg.end());
                offer(std::move(prefix));
                std::vector<Vertex> suffix(seg.rbegin(), seg.rend());
                suffix.insert(suffix.end(), st.path.begin() + static_cast<std::ptrdiff_t>(i), st.path.end());
                offer(std::move(suffix));
            }
        }
    }
    if (best) return accept(std::move(*best));
    return std::nullopt;
}

/// Single-vertex exchange: for a path endpoint u' and an off-path remainder
/// vertex u'' on the other side with d(u',C) + d(u'',C) >= c - 1 on a tight
/// fixed cycle C, swap u'' into C for some v in N(u',C) and hang v on the end
/// of the path. |G1| is unchanged and |P| grows by one.
inline std::optional<SearchState> move_exchange_one(const SearchState & st, const BipartiteGraph & g,
                                                    const CycleProfile & prof) {
    if (st.path.empty()) return std::nullopt;
    const VertexSet off = st.remainder - vertex_set_of(g, st.path);
    if (off.empty()) return std::nullopt;

    std::vector<Vertex> ends{st.path.front()};
    if (st.path.size() > 1) ends.push_back(st.path.back());

    for (std::size_t e = 0; e < ends.size(); ++e) {
        const Vertex u1 = ends[e];
        for (Vertex u2 : off) {
            if (g.side(u2) == g.side(u1)) continue;
            for (std::size_t i = 0; i < st.fixed_cycles.size(); ++i) {
                const auto & cyc = st.fixed_cycles[i];
                const std::size_t c = prof[i];
                if (cyc.size() != c) continue;
                const VertexSet cset = vertex_set_of(g, cyc);
                if (degree_in(g, u1, cset) + degree_in(g, u2, cset) + 1 < c) continue;

                std::optional<std::vector<Vertex>> chosen;
                Vertex chosen_v = 0;
                std::size_t chosen_edges = 0;
                for (Vertex v : g.neighbors(u1) & cset) {
                    VertexSet s = cset;
                    s.erase(v);
                    s.insert(u2);
                    std::optional<std::vector<Vertex>> cyc2;
                    if (c <= exact_move_limit)
                        cyc2 = find_spanning_cycle(g, s);
                    else if (g.adjacent(u2, predecessor(cyc, v)) && g.adjacent(u2, successor(cyc, v))) {
                        cyc2 = cyc;
                        std::replace(cyc2->begin(), cyc2->end(), v, u2);
                    }
                    if (! cyc2) continue;
                    std::size_t edges = induced_edge_count(g, s);
                    if (! chosen || edges > chosen_edges) {
                        chosen = std::move(cyc2);
                        chosen_v = v;
                        chosen_edges = edges;
                    }
                }
                if (! chosen) continue;

                SearchState next = st;
                replace_cycle(g, next, i, std::move(*chosen));
                std::vector<Vertex> path = st.path;
                if (e == 0)
                    path.insert(path.begin(), chosen_v);
                else
                    path.push_back(chosen_v);
                replace_path(next, std::move(path));
                return next;
            }
        }
    }
    return std::nullopt;
}

/// A cycle of length >= c_k inside G2: chord closures of P (one endpoint
/// chord, or two crossing endpoint chords), a P + Q splice through an
/// alternating segment Q of G2 - V(P), and finally an exact search when G2
/// is small. The shortest cheap candidate wins.
inline std::optional<std::vector<Vertex>> move_close_cycle(const SearchState & st, const BipartiteGraph & g,
                                                           const CycleProfile & prof, Rng * order = nullptr) {
    const std::size_t c = prof[prof.k() - 1];
    if (st.remainder.count() < c) return std::nullopt;

    std::optional<std::vector<Vertex>> best;
    auto offer = [&](std::vector<Vertex> cand) {
        if (cand.size() >= c && cand.size() >= 4 && (! best || cand.size() < best->size())) best = std::move(cand);
    };

    const auto & p = st.path;
    const std::size_t s = p.size();
    if (s >= 4) {
        const Vertex first = p.front(), last = p.back();
        for (std::size_t j = 3; j < s; ++j)
            if (g.adjacent(first, p[j])) offer({p.begin(), p.begin() + static_cast<std::ptrdiff_t>(j + 1)});
        for (std::size_t i = 0; i + 3 < s; ++i)
            if (g.adjacent(last, p[i])) offer({p.begin() + static_cast<std::ptrdiff_t>(i), p.end()});
        // first ~ p[j], last ~ p[i], i < j: p[0..i] then p[s-1] down to p[j].
        for (std::size_t i = 0; i + 1 < s; ++i) {
            if (! g.adjacent(last, p[i])) continue;
            for (std::size_t j = i + 1; j < s; ++j) {
                if (! g.adjacent(first, p[j]) || j == 0) continue;
                std::vector<Vertex> cand(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i + 1));
                for (std::size_t t = s; t-- > j;) cand.push_back(p[t]);
                if (cand.size() >= 4 && is_cycle(g, cand)) offer(std::move(cand));
            }
        }
    }

    if (s >= 1) {
        const VertexSet off = st.remainder - vertex_set_of(g, p);
        auto segments = detail::alternating_segments(g, off);
        for (Vertex v : off) segments.push_back({v});
        for (const auto & q : segments) {
            for (std::size_t a = 0; a < s; ++a) {
                if (! g.adjacent(p[a], q.front())) continue;
                for (std::size_t b = 0; b < s; ++b) {
                    if (b == a || ! g.adjacent(p[b], q.back())) continue;
                    std::vector<Vertex> cand;
                    if (a < b) {
                        // p[a..b] then q reversed back to p[a].
                        cand.assign(p.begin() + static_cast<std::ptrdiff_t>(a), p.begin() + static_cast<std::ptrdiff_t>(b + 1));
                        cand.insert(cand.end(), q.rbegin(), q.rend());
                    } else {
                        cand.assign(p.begin() + static_cast<std::ptrdiff_t>(b), p.begin() + static_cast<std::ptrdiff_t>(a + 1));
                        cand.insert(cand.end(), q.begin(), q.end());
                    }
                    if (is_cycle(g, cand)) offer(std::move(cand));
                }
            }
        }
    }

    if (! best && st.remainder.count() <= exact_move_limit) return detail::cycle_within(g, st.remainder, c, order);
    return best;
}

/// Endpoint pivots: for each tight fixed cycle C*_p with
/// d(u1,C*_p) + d(us,C*_p) >= c_p - 1, the distinguished x*, y* on it.
inline std::vector<ExchangeContext> pivot_contexts(const SearchState & st, const BipartiteGraph & g, const CycleProfile & prof) {
    std::vector<ExchangeContext> out;
    if (st.path.size() < 2) return out;
    const Vertex u1 = st.path.front(), us = st.path.back();
    for (std::size_t p = 0; p < st.fixed_cycles.size(); ++p) {
        const auto & cyc = st.fixed_cycles[p];
        const std::size_t c = prof[p];
        if (cyc.size() != c) continue;
        const VertexSet cset = vertex_set_of(g, cyc);
        const std::size_t d1 = degree_in(g, u1, cset), ds = degree_in(g, us, cset);
        if (d1 + ds + 1 < c) continue;
        // The endpoint that may miss one vertex of its opposite side decides x*.
        const Vertex partial = d1 == c / 2 ? us : u1;
        const Side x_side = g.side(partial) == Side::X ? Side::Y : Side::X;
        std::optional<Vertex> x_star;
        for (Vertex v : cyc)
            if (g.side(v) == x_side && ! g.adjacent(partial, v) && (! x_star || v < *x_star)) x_star = v;
        if (! x_star)
            for (Vertex v : cyc)
                if (g.side(v) == x_side && (! x_star || v < *x_star)) x_star = v;
        if (! x_star) continue;
        const Vertex xp = successor(cyc, *x_star), xm = predecessor(cyc, *x_star);
        std::optional<Vertex> y_star;
        for (Vertex v : cyc)
            if (g.side(v) != x_side && v != xp && v != xm && (! y_star || v < *y_star)) y_star = v;
        // Four-cycles have no y*; they only arise in conjecture mode.
        if (! y_star) continue;
        out.push_back({p, std::nullopt, *x_star, *y_star});
    }
    return out;
}

/// Degree concentration: with P a Hamilton path of G2, a pivot cycle C*_p and
/// a second tight cycle C*_q (q != p) on which the six probe vertices
/// u1, u2, u_{s-1}, us, x*, y* have total degree >= 3|C_q| - 5.
inline std::optional<ExchangeContext> select_concentration(const SearchState & st, const BipartiteGraph & g,
                                                           const CycleProfile & prof) {
    if (st.path.size() < 2 || st.path.size() != st.remainder.count()) return std::nullopt;
    const auto & p = st.path;
    for (auto ctx : pivot_contexts(st, g, prof)) {
        VertexSet probes(g.vertex_count(), {p.front(), p[1], p[p.size() - 2], p.back(), ctx.x_star, ctx.y_star});
        for (std::size_t q = 0; q < st.fixed_cycles.size(); ++q) {
            if (q == ctx.p_index || st.fixed_cycles[q].size() != prof[q]) continue;
            const VertexSet qset = vertex_set_of(g, st.fixed_cycles[q]);
            std::size_t sum = 0;
            for (Vertex z : probes) sum += degree_in(g, z, qset);
            if (sum + 5 >= 3 * prof[q]) {
                ctx.q_index = q;
                return ctx;
            }
        }
    }
    return std::nullopt;
}

/// Bounded swap enumeration among G2, C*_p and (optionally) C*_q: each part
/// gives up at most two vertices from its pool (G2: u1, u2, u_{s-1}, us;
/// cycles: single vertices, adjacent pairs, and {x*, y*} on C*_p) and every
/// moved vertex lands in one of the other parts. The first assignment under
/// which every part still holds a long enough cycle completes the packing.
inline std::optional<Packing> move_double_exchange(const SearchState & st, const ExchangeContext & ctx,
                                                   const BipartiteGraph & g, const CycleProfile & prof) {
    const std::size_t k = prof.k();
    if (st.path.empty()) return std::nullopt;

    struct Part {
        VertexSet base;
        std::size_t need;
        std::vector<std::vector<Vertex>> outs;
    };
    std::vector<Part> parts;

    std::vector<Vertex> ends;
    {
        const auto & p = st.path;
        for (Vertex v : {p.front(), p.size() > 1 ? p[1] : p.front(), p.size() > 1 ? p[p.size() - 2] : p.front(), p.back()})
            if (std::find(ends.begin(), ends.end(), v) == ends.end()) ends.push_back(v);
    }
    Part rest{st.remainder, prof[k - 1], {{}}};
    for (std::size_t a = 0; a < ends.size(); ++a) {
        rest.outs.push_back({ends[a]});
        for (std::size_t b = a + 1; b < ends.size(); ++b) rest.outs.push_back({ends[a], ends[b]});
    }
    parts.push_back(std::move(rest));

    auto cycle_part = [&](std::size_t idx, bool with_stars) {
        const auto & cyc = st.fixed_cycles[idx];
        Part part{vertex_set_of(g, cyc), prof[idx], {{}}};
        for (Vertex v : cyc) part.outs.push_back({v});
        for (std::size_t i = 0; i < cyc.size(); ++i) part.outs.push_back({cyc[i], cyc[(i + 1) % cyc.size()]});
        if (with_stars) part.outs.push_back({ctx.x_star, ctx.y_star});
        return part;
    };
    parts.push_back(cycle_part(ctx.p_index, true));
    if (ctx.q_index) parts.push_back(cycle_part(*ctx.q_index, false));
    const std::size_t np = parts.size();

    std::unordered_map<VertexSet, std::optional<std::vector<Vertex>>, VertexSetHash> cache;
    auto cycle_in = [&](const VertexSet & s, std::size_t need) -> const std::optional<std::vector<Vertex>> & {
        auto it = cache.find(s);
        if (it == cache.end()) it = cache.emplace(s, detail::cycle_within(g, s, need)).first;
        return it->second;
    };

    std::vector<std::size_t> choice(np, 0);
    while (true) {
        std::vector<std::pair<Vertex, std::size_t>> moved;
        for (std::size_t i = 0; i < np; ++i)
            for (Vertex v : parts[i].outs[choice[i]]) moved.emplace_back(v, i);

        if (! moved.empty()) {
            const std::size_t dests = np - 1;
            std::size_t combos = 1;
            for (std::size_t t = 0; t < moved.size(); ++t) combos *= dests;
            for (std::size_t code = 0; code < combos; ++code) {
                std::vector<VertexSet> sets;
                for (const auto & part : parts) sets.push_back(part.base);
                for (const auto & [v, from] : moved) sets[from].erase(v);
                std::size_t rem = code;
                for (const auto & [v, from] : moved) {
                    std::size_t d = rem % dests;
                    rem /= dests;
                    std::size_t to = d >= from ? d + 1 : d;
                    sets[to].insert(v);
                }
                bool plausible = true;
                for (std::size_t i = 0; i < np && plausible; ++i)
                    plausible = detail::could_hold_cycle(g, sets[i], parts[i].need);
                if (! plausible) continue;

                bool ok = true;
                std::vector<std::vector<Vertex>> found(np);
                for (std::size_t i = np; i-- > 0 && ok;) {
                    const auto & c = cycle_in(sets[i], parts[i].need);
                    if (c)
                        found[i] = *c;
                    else
                        ok = false;
                }
                if (! ok) continue;

                Packing pk;
                pk.cycles = st.fixed_cycles;
                pk.cycles[ctx.p_index] = found[1];
                if (ctx.q_index) pk.cycles[*ctx.q_index] = found[2];
                pk.cycles.push_back(found[0]);
                return pk;
            }
        }

        std::size_t i = 0;
        while (i < np && ++choice[i] == parts[i].outs.size()) choice[i++] = 0;
        if (i == np) break;
    }
    return std::nullopt;
}

namespace detail {

inline void record(const BipartiteGraph & g, MoveKind kind, const SearchState & before, const SearchState & after,
                   PackStats & stats, std::vector<TraceEntry> * trace) {
    if (! (after.potential > before.potential))
        throw std::logic_error(std::string(to_string(kind)) + " did not improve the potential: " + before.potential.describe() +
                               " -> " + after.potential.describe());
    if (compute_potential(g, after) != after.potential)
        throw std::logic_error(std::string(to_string(kind)) + " left a stale potential");
    ++stats.moves[kind];
    if (trace) trace->push_back({kind, before.potential, after.potential});
}

inline void endpoint_bound_diagnostic(const SearchState & st, const BipartiteGraph & g, const CycleProfile & prof, PackStats & stats) {
    if (st.path.size() < 2 || st.path.size() != st.remainder.count()) return;
    const std::size_t ck = prof[prof.k() - 1];
    for (const auto & ctx : pivot_contexts(st, g, prof)) {
        const VertexSet pset = vertex_set_of(g, st.fixed_cycles[ctx.p_index]);
        const std::size_t cp = prof[ctx.p_index];
        for (Vertex z : {st.path.front(), st.path.back()}) {
            ++stats.endpoint_bound_checks;
            if (degree_in(g, z, st.remainder) + degree_in(g, z, pset) + 1 > ck / 2 + cp / 2) ++stats.endpoint_bound_violations;
        }
    }
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Move loop from a peeled state. Returns the completed packing, or nullopt
/// on stall or budget exhaustion.
inline std::optional<Packing> run_moves(const BipartiteGraph & g, const CycleProfile & prof, SearchState st,
                                        const PackOptions & opt, PackStats & stats, Rng * order) {
    for (std::size_t iter = 0; iter < opt.budget; ++iter) {
        if (auto next = move_shrink(st, g, prof)) {
            record(g, MoveKind::Shrink, st, *next, stats, opt.trace);
            st = std::move(*next);
            continue;
        }
        if (auto next = move_extend_path(st, g)) {
            record(g, MoveKind::ExtendPath, st, *next, stats, opt.trace);
            st = std::move(*next);
            continue;
        }
        if (auto next = move_exchange_one(st, g, prof)) {
            record(g, MoveKind::ExchangeOne, st, *next, stats, opt.trace);
            st = std::move(*next);
            continue;
        }
        if (auto cyc = move_close_cycle(st, g, prof, order)) {
            ++stats.moves[MoveKind::CloseCycle];
            Packing pk;
            pk.cycles = st.fixed_cycles;
            pk.cycles.push_back(std::move(*cyc));
            return pk;
        }
        endpoint_bound_diagnostic(st, g, prof, stats);
        if (auto ctx = select_concentration(st, g, prof))
            if (auto pk = move_double_exchange(st, *ctx, g, prof)) {
                ++stats.moves[MoveKind::DoubleExchange];
                return pk;
            }
        for (const auto & ctx : pivot_contexts(st, g, prof))
            if (auto pk = move_double_exchange(st, ctx, g, prof)) {
                ++stats.moves[MoveKind::DoubleExchange];
                return pk;
            }
        return std::nullopt;
    }
    return std::nullopt;
}

inline std::optional<Packing> engine(const BipartiteGraph & g, const CycleProfile & prof, const PackOptions & opt,
                                     PackStats & stats) {
    const std::size_t k = prof.k();
    for (std::size_t attempt = 0; attempt <= opt.restarts; ++attempt) {
        if (attempt > 0) {
            ++stats.moves[MoveKind::Restart];
            ++stats.restarts_used;
        }
        const bool perturb = attempt > 0 || opt.perturb_first;
        Rng rng(mix_seed(opt.seed, attempt));

        std::vector<std::vector<Vertex>> fixed;
        if (k > 1) {
            // Peel the (k-1)-prefix first; re-peeling on restart uses a fresh stream.
            PackOptions sub = opt;
            sub.seed = mix_seed(opt.seed, 1000 + attempt);
            sub.perturb_first = perturb;
            sub.oracle_fallback = false;
            PackStats sub_stats;
            auto prefix = engine(g, prof.prefix(k - 1), sub, sub_stats);
            stats.moves += sub_stats.moves;
            stats.endpoint_bound_checks += sub_stats.endpoint_bound_checks;
            stats.endpoint_bound_violations += sub_stats.endpoint_bound_violations;
            if (! prefix) continue;
            fixed = std::move(prefix->cycles);
        }

        SearchState st = make_state(g, std::move(fixed));
        if (perturb && ! st.remainder.empty()) {
            auto members = st.remainder.to_vector();
            replace_path(st, {members[rng.below(members.size())]});
        }
        if (auto pk = run_moves(g, prof, std::move(st), opt, stats, perturb ? &rng : nullptr)) return pk;
    }
    return std::nullopt;
}

}

/// Packs k vertex-disjoint cycles, cycle i of length >= prof[i], into g.
/// The move engine runs first (with seeded restarts); when it fails and the
/// host is within the oracle limit the exact oracle decides. Infeasible is
/// only reported when the oracle has refuted the instance.
inline PackResult pack(const BipartiteGraph & g, const CycleProfile & prof, const PackOptions & opt = {}) {
    PackResult res;
    if (prof.n() > g.vertex_count()) {
        res.outcome = Outcome::Infeasible;
        return res;
    }

    auto finish = [&](Packing pk) {
        if (! verify_packing(g, prof, pk).ok) throw std::logic_error("packer produced a packing that fails verification");
        res.outcome = Outcome::Packing;
        res.packing = std::move(pk);
        return res;
    };

    if (auto pk = detail::engine(g, prof, opt, res.stats)) return finish(std::move(*pk));

    if (opt.oracle_fallback && g.vertex_count() <= std::min(opt.oracle_limit, oracle_hard_cap)) {
        res.stats.oracle_used = true;
        ++res.stats.moves[MoveKind::OracleFallback];
        if (auto pk = brute_force_pack(g, prof, opt.oracle_limit)) return finish(std::move(*pk));
        res.outcome = Outcome::Infeasible;
        return res;
    }
    res.outcome = Outcome::Unknown;
    return res;
}

}
