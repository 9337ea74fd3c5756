// Packs two long cycles into a random host that meets the degree threshold,
// then checks the result with the verifier.
#include <cyclepack.hpp>

#include <iostream>

int main() {
    using namespace cyclepack;
    const auto prof = make_profile({8, 6});
    const auto g = gen_random_mindeg(8, 8, degree_threshold(prof), 2024);

    std::cout << "host: " << g.vertex_count() << " vertices, " << g.edge_count() << " edges, min degree "
              << min_degree(g) << " (threshold " << degree_threshold(prof) << ")\n";

    const auto res = pack(g, prof);
    std::cout << "outcome: " << to_string(res.outcome) << '\n';
    if (! res.packing) return 1;
    for (const auto & c : res.packing->cycles) {
        std::cout << "  cycle of length " << c.size() << ':';
        for (Vertex v : c) std::cout << ' ' << v;
        std::cout << '\n';
    }
    std::cout << "verified: " << (verify_packing(g, prof, *res.packing).ok ? "yes" : "no") << '\n';
}
