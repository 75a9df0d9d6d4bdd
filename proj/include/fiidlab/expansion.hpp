#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fiidlab/graph.hpp"

namespace fiidlab {

// Minimum of |W-bar| / |W| over an enumerated family of vertex sets, where
// W-bar adds the exterior vertex boundary. `capped` marks a partial
// (lower-confidence) result: the enumeration budget ran out.
struct ExpansionResult {
    double min_ratio = 0.0;
    std::vector<Vertex> argmin;
    std::uint64_t enumerated = 0;
    bool capped = false;
};

// Connected sets of size 1..max_size (heuristic restriction; the family the
// star weight is approached by on trees).
ExpansionResult vertex_expansion_exhaustive(const Graph& g, std::uint32_t max_size,
                                            std::uint64_t cap = 5'000'000);

// All nonempty subsets of size <= max_size; only viable for small graphs.
ExpansionResult vertex_expansion_unrestricted(const Graph& g, std::uint32_t max_size,
                                              std::uint64_t cap = 5'000'000);

// Star-weight report: connected-family minimum, the unrestricted scan when
// affordable, and the regular-tree reference value d-1.
struct BetaWeightReport {
    ExpansionResult connected;
    std::optional<ExpansionResult> unrestricted;
    double tree_reference = 0.0;
};
BetaWeightReport beta_weight(const Graph& g, std::uint32_t max_size,
                             std::uint64_t cap = 5'000'000);

// Exact edge Cheeger constant min_{1<=|S|<=n/2} |boundary(S)| / |S| by subset
// enumeration; n <= 25.
double edge_cheeger_exhaustive(const Graph& g);

} // namespace fiidlab
