#pragma once

#include <cstdint>
#include <vector>

#include "fiidlab/factors.hpp"
#include "fiidlab/graph.hpp"

namespace fiidlab {

struct WalkSample {
    Vertex start = 0;
    std::vector<Vertex> trajectory;  // steps + 1 entries, consecutive equal or adjacent
    std::uint64_t holding = 0;       // lazy steps (blocked target)
};

// Delayed simple random walk: at each step pick one of the host half-edges
// uniformly; move iff the target carries `symbol`, else stay. The uniform
// measure on a cluster is stationary for this chain.
WalkSample delayed_srw(const Graph& g, const Configuration& c, Symbol symbol,
                       Vertex start, std::uint64_t steps, std::uint64_t seed);

// Endpoint only (no trajectory storage), for stationarity tallies.
Vertex delayed_srw_endpoint(const Graph& g, const Configuration& c, Symbol symbol,
                            Vertex start, std::uint64_t steps, std::uint64_t seed);

struct BirkhoffResult {
    std::vector<double> running_mean;  // mean of colour over the first k+1 positions
    double final_mean = 0.0;
};

// Time average of the (numeric) colour symbol along the walk.
BirkhoffResult birkhoff_average(const WalkSample& w, const Configuration& colouring);

} // namespace fiidlab
