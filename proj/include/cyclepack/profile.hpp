#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cyclepack {

enum class Mode {
    Theorem,     ///< every cycle length >= 6
    Conjecture,  ///< every cycle length >= 4
};

inline std::string_view to_string(Mode m) { return m == Mode::Theorem ? "theorem" : "conjecture"; }

inline Mode parse_mode(std::string_view s) {
    if (s == "theorem") return Mode::Theorem;
    if (s == "conjecture") return Mode::Conjecture;
    throw std::invalid_argument("unknown mode '" + std::string(s) + "' (expected theorem|conjecture)");
}

class ProfileError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Target graph H: k disjoint even cycles. Lengths are kept sorted in
/// descending order (stable), so the last entry is the cycle realised in the
/// remainder by the packer.
class CycleProfile {
public:
    CycleProfile() = default;

    std::size_t k() const { return lengths_.size(); }
    std::size_t n() const { return n_; }
    Mode mode() const { return mode_; }
    const std::vector<std::size_t> & lengths() const { return lengths_; }
    std::size_t operator[](std::size_t i) const { return lengths_.at(i); }
    std::size_t floor() const { return mode_ == Mode::Theorem ? 6 : 4; }

    /// Profile of the first `count` entries (same mode).
    CycleProfile prefix(std::size_t count) const {
        CycleProfile p;
        p.mode_ = mode_;
        p.lengths_.assign(lengths_.begin(), lengths_.begin() + static_cast<std::ptrdiff_t>(std::min(count, lengths_.size())));
        p.n_ = std::accumulate(p.lengths_.begin(), p.lengths_.end(), std::size_t{0});
        return p;
    }

    std::string describe() const {
        std::string s;
        for (std::size_t i = 0; i < lengths_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(lengths_[i]);
        }
        return s;
    }

    friend bool operator==(const CycleProfile &, const CycleProfile &) = default;

private:
    friend CycleProfile make_profile(std::vector<std::size_t>, Mode);

    std::vector<std::size_t> lengths_;
    Mode mode_ = Mode::Theorem;
    std::size_t n_ = 0;
};

inline CycleProfile make_profile(std::vector<std::size_t> lengths, Mode mode = Mode::Theorem) {
    if (lengths.empty()) throw ProfileError("profile must contain at least one cycle length");
    const std::size_t floor = mode == Mode::Theorem ? 6 : 4;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const auto c = lengths[i];
        if (c % 2 != 0)
            throw ProfileError("profile entry " + std::to_string(i) + " (" + std::to_string(c) + ") is odd");
        if (c < floor)
            throw ProfileError("profile entry " + std::to_string(i) + " (" + std::to_string(c) + ") is below " +
                               std::to_string(floor) + " in " + std::string(to_string(mode)) + " mode");
    }
    std::stable_sort(lengths.begin(), lengths.end(), std::greater<>());
    CycleProfile p;
    p.mode_ = mode;
    p.n_ = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
    p.lengths_ = std::move(lengths);
    return p;
}

/// n/2 - k + 1. Never below zero for valid profiles since every length is >= 4.
inline std::size_t degree_threshold(const CycleProfile & p) { return p.n() / 2 - p.k() + 1; }

/// k copies of 2s: the all-equal special case of the packing theorem.
inline CycleProfile wang_profile(std::size_t s, std::size_t k) {
    if (s < 3) throw std::invalid_argument("wang_profile requires s >= 3");
    if (k < 1) throw std::invalid_argument("wang_profile requires k >= 1");
    return make_profile(std::vector<std::size_t>(k, 2 * s), Mode::Theorem);
}

/// "6,6,8" -> {6, 6, 8}.
inline std::vector<std::size_t> parse_length_list(std::string_view text) {
    std::vector<std::size_t> out;
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t j = text.find(',', i);
        if (j == std::string_view::npos) j = text.size();
        auto tok = text.substr(i, j - i);
        if (tok.empty()) throw ProfileError("empty entry in profile list '" + std::string(text) + "'");
        std::size_t v = 0;
        for (char ch : tok) {
            if (ch < '0' || ch > '9') throw ProfileError("non-numeric entry '" + std::string(tok) + "' in profile list");
            v = v * 10 + static_cast<std::size_t>(ch - '0');
        }
        out.push_back(v);
        i = j + 1;
    }
    return out;
}

}
