#pragma once

#include <cyclepack/vertex_set.hpp>

#include <vector>

namespace cyclepack {

/// k vertex-disjoint cycles; cycles[i] realises profile entry i (profile
/// order, longest first). Each cycle is stored without repeating its first
/// vertex; the stored order is its orientation.
struct Packing {
    std::vector<std::vector<Vertex>> cycles;

    friend bool operator==(const Packing &, const Packing &) = default;
};

}
