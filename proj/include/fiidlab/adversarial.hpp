#pragma once

#include <cstdint>

#include "fiidlab/graph.hpp"

namespace fiidlab {

// Geometric cooling schedule for the swap search.
struct AnnealSchedule {
    double t0 = 1.0;
    double alpha = 0.9995;
    std::uint32_t iterations = 50000;
    std::uint32_t restarts = 4;
};

struct AdversarialResult {
    VertexSet best_set;
    std::uint32_t set_size = 0;
    std::uint64_t internal_edges = 0;
    double avg_degree = 0.0;  // 2 * internal_edges / set_size
    double density = 0.0;     // set_size / n
};

// Local search over single-vertex swaps for the densest fixed-size subgraph:
// |S| = floor(eps * n), maximizing internal average degree, with
// simulated-annealing acceptance. Deterministic given seed; restarts use
// independent substreams and the best-ever set wins.
AdversarialResult adversarial_subgraph_search(const Graph& g, double eps,
                                              const AnnealSchedule& schedule,
                                              std::uint64_t seed);

} // namespace fiidlab
