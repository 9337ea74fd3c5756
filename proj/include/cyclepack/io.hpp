#pragma once

#include <cyclepack/graph.hpp>

#include <charconv>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cyclepack {

// Text format, one record per line:
//   c <anything>               comment
//   p bip <x_size> <y_size> <edge_count>
//   e <x_id> <y_id>            0 <= x_id < x_size <= y_id < x_size + y_size

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string & what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::optional<std::size_t> to_count(std::string_view t) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) return std::nullopt;
    return v;
}

}

inline BipartiteGraph parse_graph(std::istream & in) {
    std::string raw;
    std::size_t line_no = 0;
    std::optional<std::size_t> xs, ys, declared;
    std::vector<Edge> edges;
    std::vector<VertexSet> seen;

    while (std::getline(in, raw)) {
        ++line_no;
        auto tok = detail::split_ws(raw);
        if (tok.empty() || tok[0] == "c") continue;

        if (tok[0] == "p") {
            if (xs) throw ParseError(line_no, "duplicate header");
            if (tok.size() != 5 || tok[1] != "bip") throw ParseError(line_no, "malformed header, expected 'p bip <x> <y> <m>'");
            xs = detail::to_count(tok[2]);
            ys = detail::to_count(tok[3]);
            declared = detail::to_count(tok[4]);
            if (! xs || ! ys || ! declared) throw ParseError(line_no, "malformed header counts");
            seen.assign(*xs, VertexSet(*ys));
            continue;
        }

        if (tok[0] == "e") {
            if (! xs) throw ParseError(line_no, "edge before header");
            if (tok.size() != 3) throw ParseError(line_no, "malformed edge, expected 'e <x_id> <y_id>'");
            auto a = detail::to_count(tok[1]);
            auto b = detail::to_count(tok[2]);
            if (! a || ! b) throw ParseError(line_no, "malformed edge ids");
            const std::size_t n = *xs + *ys;
            if (*a >= n || *b >= n) throw ParseError(line_no, "vertex id out of range");
            const bool a_x = *a < *xs, b_x = *b < *xs;
            if (a_x == b_x) throw ParseError(line_no, "intra-side edge " + std::to_string(*a) + " " + std::to_string(*b));
            if (! a_x) throw ParseError(line_no, "edge must list the X vertex first");
            auto local_y = static_cast<Vertex>(*b - *xs);
            if (seen[*a].contains(local_y)) throw ParseError(line_no, "duplicate edge " + std::to_string(*a) + " " + std::to_string(*b));
            seen[*a].insert(local_y);
            edges.emplace_back(static_cast<Vertex>(*a), static_cast<Vertex>(*b));
            continue;
        }

        throw ParseError(line_no, "unknown record type '" + std::string(tok[0]) + "'");
    }

    if (! xs) throw ParseError(line_no, "missing header");
    if (edges.size() != *declared)
        throw ParseError(line_no, "header declares " + std::to_string(*declared) + " edges, found " + std::to_string(edges.size()));
    return BipartiteGraph(*xs, *ys, edges);
}

inline BipartiteGraph parse_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_graph(in);
}

inline std::string serialize_graph(const BipartiteGraph & g) {
    std::ostringstream out;
    out << "p bip " << g.x_size() << ' ' << g.y_size() << ' ' << g.edge_count() << '\n';
    for (auto [x, y] : g.edges()) out << "e " << x << ' ' << y << '\n';
    return out.str();
}

}
