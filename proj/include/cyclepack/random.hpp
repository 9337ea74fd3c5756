#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace cyclepack {

/// Seeded stream with platform-independent derived draws. The standard
/// distributions are implementation-defined, so bounded integers, coin flips
/// and shuffles are computed here directly from mt19937_64 output.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t r;
        do r = engine_();
        while (r >= limit);
        return r % bound;
    }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool coin(double p) { return unit() < p; }

    template <typename T>
    void shuffle(std::vector<T> & v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

}
