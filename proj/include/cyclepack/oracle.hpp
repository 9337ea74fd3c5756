#pragma once

#include <cyclepack/graph.hpp>
#include <cyclepack/packing.hpp>
#include <cyclepack/profile.hpp>

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclepack {

inline constexpr std::size_t default_oracle_limit = 18;

/// Memory for the subset tables grows as 5 * 2^n bytes; 24 vertices is 80 MiB.
inline constexpr std::size_t oracle_hard_cap = 24;

/// CYCLEPACK_ORACLE_LIMIT when set to a positive integer, else the default.
inline std::size_t oracle_limit_from_env() {
    if (const char * s = std::getenv("CYCLEPACK_ORACLE_LIMIT")) {
        char * end = nullptr;
        unsigned long v = std::strtoul(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) return v;
    }
    return default_oracle_limit;
}

class OracleRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact verdict: a packing, or nullopt as a proof that none exists.
using OracleVerdict = std::optional<Packing>;

namespace detail {

/// Subset tables over all 2^n vertex subsets of the host.
///   ends[S]   : vertices v such that some path covers exactly S, starting at
///               the smallest member of S and ending at v
///   longest[S]: the largest vertex count of a cycle whose vertex set is
///               contained in S (0 if none)
class SubsetTables {
public:
    explicit SubsetTables(const BipartiteGraph & g) : n_(g.vertex_count()), adj_(n_, 0) {
        for (Vertex v = 0; v < n_; ++v)
            for (Vertex w : g.neighbors(v)) adj_[v] |= 1u << w;
        const std::uint32_t full = n_ == 32 ? ~0u : (1u << n_) - 1;
        const std::size_t count = std::size_t{1} << n_;
        ends_.assign(count, 0);
        longest_.assign(count, 0);
        for (std::size_t v = 0; v < n_; ++v) ends_[std::size_t{1} << v] = 1u << v;
        for (std::size_t s = 1; s < count; ++s) {
            const std::uint32_t e = ends_[s];
            if (! e) continue;
            const unsigned root = static_cast<unsigned>(std::countr_zero(s));
            const std::uint32_t above = (root + 1 >= 32 ? 0u : (~0u << (root + 1))) & full & ~static_cast<std::uint32_t>(s);
            for (std::uint32_t it = e; it; it &= it - 1) {
                const unsigned v = static_cast<unsigned>(std::countr_zero(it));
                for (std::uint32_t ext = adj_[v] & above; ext; ext &= ext - 1) {
                    const unsigned w = static_cast<unsigned>(std::countr_zero(ext));
                    ends_[s | (std::size_t{1} << w)] |= 1u << w;
                }
            }
        }
        for (std::size_t s = 1; s < count; ++s) {
            std::uint8_t best = spans_cycle(s) ? static_cast<std::uint8_t>(std::popcount(s)) : 0;
            for (std::size_t it = s; it; it &= it - 1) {
                const std::size_t sub = s & ~(std::size_t{1} << std::countr_zero(it));
                best = std::max(best, longest_[sub]);
            }
            longest_[s] = best;
        }
    }

    std::size_t size() const { return n_; }

    bool spans_cycle(std::size_t s) const {
        if (std::popcount(s) < 4) return false;
        const unsigned root = static_cast<unsigned>(std::countr_zero(s));
        return (ends_[s] & adj_[root]) != 0;
    }

    std::size_t longest(std::size_t s) const { return longest_[s]; }

    /// Cycles at least `c` long whose vertex set has no proper subset that
    /// also spans such a cycle. Any packing can be rewritten to use only these.
    const std::vector<std::uint32_t> & minimal_sets(std::size_t c) {
        auto it = minimal_.find(c);
        if (it != minimal_.end()) return it->second;
        std::vector<std::uint32_t> out;
        const std::size_t count = std::size_t{1} << n_;
        for (std::size_t s = 1; s < count; ++s) {
            if (static_cast<std::size_t>(std::popcount(s)) < c || ! spans_cycle(s)) continue;
            bool minimal = true;
            for (std::size_t it2 = s; it2 && minimal; it2 &= it2 - 1)
                if (longest_[s & ~(std::size_t{1} << std::countr_zero(it2))] >= c) minimal = false;
            if (minimal) out.push_back(static_cast<std::uint32_t>(s));
        }
        return minimal_.emplace(c, std::move(out)).first->second;
    }

    /// Hamilton cycle of G[S] reconstructed from the path table.
    std::vector<Vertex> cycle_on(std::size_t s) const {
        const unsigned root = static_cast<unsigned>(std::countr_zero(s));
        std::uint32_t closing = ends_[s] & adj_[root];
        if (! closing) throw std::logic_error("cycle_on: set does not span a cycle");
        unsigned cur = static_cast<unsigned>(std::countr_zero(closing));
        std::vector<Vertex> rev{cur};
        std::size_t rest = s;
        while (std::popcount(rest) > 1) {
            rest &= ~(std::size_t{1} << cur);
            const std::uint32_t prev = ends_[rest] & adj_[cur];
            cur = static_cast<unsigned>(std::countr_zero(prev));
            rev.push_back(cur);
        }
        return {rev.rbegin(), rev.rend()};
    }

private:
    std::size_t n_;
    std::vector<std::uint32_t> adj_;
    std::vector<std::uint32_t> ends_;
    std::vector<std::uint8_t> longest_;
    std::map<std::size_t, std::vector<std::uint32_t>> minimal_;
};

}

/// Exact packing search by backtracking over vertex-disjoint cycle vertex
/// sets, longest profile entry first. Only inclusion-minimal cycle sets are
/// tried, with pigeonhole and "longest cycle left in the remainder" pruning,
/// and equal profile entries take their sets in increasing order.
inline OracleVerdict brute_force_pack(const BipartiteGraph & g, const CycleProfile & prof,
                                      std::size_t oracle_limit = default_oracle_limit) {
    const std::size_t n = g.vertex_count();
    if (n > oracle_limit || n > oracle_hard_cap)
        throw OracleRefused("instance with " + std::to_string(n) + " vertices exceeds oracle limit " +
                            std::to_string(std::min(oracle_limit, oracle_hard_cap)));
    if (prof.n() > n) return std::nullopt;

    detail::SubsetTables tables(g);
    const std::size_t k = prof.k();
    const std::uint32_t all = n == 32 ? ~0u : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);

    std::vector<std::size_t> need_after(k + 1, 0);
    for (std::size_t i = k; i-- > 0;) need_after[i] = need_after[i + 1] + prof[i];

    std::vector<std::uint32_t> chosen(k, 0);
    std::vector<std::size_t> chosen_index(k, 0);

    auto search = [&](auto && self, std::size_t i, std::uint32_t used) -> bool {
        const std::uint32_t rest = all & ~used;
        if (static_cast<std::size_t>(std::popcount(rest)) < need_after[i]) return false;
        if (tables.longest(rest) < prof[i]) return false;
        const auto & sets = tables.minimal_sets(prof[i]);
        const bool tied = i > 0 && prof[i] == prof[i - 1];
        const std::size_t from = tied ? chosen_index[i - 1] + 1 : 0;
        for (std::size_t j = from; j < sets.size(); ++j) {
            const std::uint32_t s = sets[j];
            if (s & used) continue;
            if (i + 1 == k) {
                chosen[i] = s;
                return true;
            }
            const std::uint32_t next_rest = rest & ~s;
            if (static_cast<std::size_t>(std::popcount(next_rest)) < need_after[i + 1]) continue;
            if (tables.longest(next_rest) < prof[i + 1]) continue;
            chosen[i] = s;
            chosen_index[i] = j;
            if (self(self, i + 1, used | s)) return true;
        }
        return false;
    };

    if (! search(search, 0, 0)) return std::nullopt;
    Packing pk;
    for (auto s : chosen) pk.cycles.push_back(tables.cycle_on(s));
    return pk;
}

}
