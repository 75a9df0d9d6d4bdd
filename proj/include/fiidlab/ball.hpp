#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fiidlab/graph.hpp"

namespace fiidlab {

// Rooted radius-r ball, the support of a block factor evaluation. Local
// vertex 0 is the root. Two balls related by a rooted isomorphism matching
// labels bit-for-bit have equal canonical_key().
struct RootedBall {
    std::uint32_t radius = 0;
    std::uint32_t num_vertices = 0;
    std::vector<std::uint32_t> dist;                            // from root
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges; // local (u,v), once per parallel edge
    std::vector<double> labels;                                 // empty if unlabelled
    std::vector<Vertex> global_ids;                             // local -> host vertex

    bool has_labels() const { return !labels.empty(); }
    bool is_tree() const { return edges.size() + 1 == num_vertices; }

    // Canonical encoding, invariant under rooted (label-preserving)
    // isomorphism. Computed by colour refinement with individualization;
    // throws convergence_error if the search exceeds its node cap
    // (unreachable for the ball sizes this project uses).
    std::string canonical_key() const;

    // Relabel local indices by `perm` (perm[old] = new, perm[0] == 0).
    RootedBall relabelled(const std::vector<std::uint32_t>& perm) const;
};

RootedBall ball(const Graph& g, Vertex v, std::uint32_t r);
RootedBall ball(const Graph& g, Vertex v, std::uint32_t r, std::span<const double> labels);

} // namespace fiidlab
