#pragma once

#include <cstdint>
#include <vector>

#include "fiidlab/graph.hpp"

namespace fiidlab {

// Spanning tree as parent pointers toward the root. parent_edge[v] is v's own
// half-edge on the edge toward parent[v], so tags are recoverable from the
// host graph.
struct SpanningTree {
    Vertex root = 0;
    std::vector<Vertex> parent;
    std::vector<HalfEdge> parent_edge;

    std::uint32_t depth(Vertex v) const;  // edges on the v -> root path
    std::vector<std::pair<Vertex, Vertex>> edge_list() const;
};

// Uniform spanning tree by loop-erased random walks, started from vertices in
// index order and walked until they hit the growing tree.
SpanningTree wilson_ust(const Graph& g, Vertex root, std::uint64_t seed);

// 1 iff the majority of the first 2*window+1 edges on the v -> root path
// carry tag g1 or g1inv. Tags must be present and the path long enough.
int majority_label_statistic(const Graph& g, const SpanningTree& t, Vertex v,
                             std::uint32_t window);

} // namespace fiidlab
