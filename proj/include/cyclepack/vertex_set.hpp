#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <stdexcept>
#include <vector>

namespace cyclepack {

using Vertex = std::uint32_t;

/// Dense bitmask over the vertex ids 0..universe-1 of one graph.
/// Iteration is always in ascending id order.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
    VertexSet(std::size_t universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
        for (Vertex v : members) insert(v);
    }

    static VertexSet full(std::size_t universe) {
        VertexSet s(universe);
        for (std::size_t v = 0; v < universe; ++v) s.insert(static_cast<Vertex>(v));
        return s;
    }

    template <typename Range>
    static VertexSet of(std::size_t universe, const Range & members) {
        VertexSet s(universe);
        for (Vertex v : members) s.insert(v);
        return s;
    }

    std::size_t universe() const { return universe_; }

    bool contains(Vertex v) const {
        return v < universe_ && (words_[v >> 6] >> (v & 63)) & 1u;
    }

    void insert(Vertex v) {
        check(v);
        words_[v >> 6] |= std::uint64_t{1} << (v & 63);
    }

    void erase(Vertex v) {
        check(v);
        words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    /// |this ∩ other| without materialising the intersection.
    std::size_t intersection_count(const VertexSet & other) const {
        std::size_t c = 0;
        const std::size_t n = std::min(words_.size(), other.words_.size());
        for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
        return c;
    }

    bool intersects(const VertexSet & other) const {
        const std::size_t n = std::min(words_.size(), other.words_.size());
        for (std::size_t i = 0; i < n; ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    bool is_subset_of(const VertexSet & other) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t o = i < other.words_.size() ? other.words_[i] : 0;
            if (words_[i] & ~o) return false;
        }
        return true;
    }

    VertexSet & operator|=(const VertexSet & o) {
        same_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet & operator&=(const VertexSet & o) {
        same_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet & operator-=(const VertexSet & o) {
        same_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend VertexSet operator|(VertexSet a, const VertexSet & b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet & b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet & b) { return a -= b; }
    friend bool operator==(const VertexSet &, const VertexSet &) = default;

    /// Smallest member, or universe() when empty.
    Vertex first() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<Vertex>(i * 64 + std::countr_zero(words_[i]));
        return static_cast<Vertex>(universe_);
    }

    class const_iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = Vertex;
        using difference_type = std::ptrdiff_t;
        using pointer = const Vertex *;
        using reference = Vertex;

        const_iterator() = default;
        const_iterator(const VertexSet * s, std::size_t word) : set_(s), word_(word) { settle(); }

        Vertex operator*() const { return static_cast<Vertex>(word_ * 64 + std::countr_zero(bits_)); }
        const_iterator & operator++() {
            bits_ &= bits_ - 1;
            if (! bits_) {
                ++word_;
                settle();
            }
            return *this;
        }
        const_iterator operator++(int) {
            auto t = *this;
            ++*this;
            return t;
        }
        bool operator==(const const_iterator & o) const { return word_ == o.word_ && bits_ == o.bits_; }

    private:
        void settle() {
            while (word_ < set_->words_.size() && set_->words_[word_] == 0) ++word_;
            bits_ = word_ < set_->words_.size() ? set_->words_[word_] : 0;
        }

        const VertexSet * set_ = nullptr;
        std::size_t word_ = 0;
        std::uint64_t bits_ = 0;
    };

    const_iterator begin() const { return {this, 0}; }
    const_iterator end() const { return {this, words_.size()}; }

    std::vector<Vertex> to_vector() const { return {begin(), end()}; }

    std::size_t hash() const {
        std::size_t h = universe_;
        for (auto w : words_) h = h * 0x9e3779b97f4a7c15ULL ^ (w + (h >> 7));
        return h;
    }

    const std::vector<std::uint64_t> & words() const { return words_; }

private:
    void check(Vertex v) const {
        if (v >= universe_) throw std::out_of_range("vertex id out of range for VertexSet");
    }
    void same_universe(const VertexSet & o) const {
        if (o.universe_ != universe_) throw std::invalid_argument("VertexSet universes differ");
    }

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet & s) const { return s.hash(); }
};

}
