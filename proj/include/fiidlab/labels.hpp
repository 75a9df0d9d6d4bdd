#pragma once

#include <cstdint>
#include <vector>

#include "fiidlab/graph.hpp"

namespace fiidlab {

// One IID Unif[0,1) label per vertex, drawn from the counter stream keyed by
// (seed, vertex index): bit-reproducible in any evaluation order.
struct LabelField {
    std::uint64_t seed = 0;
    std::vector<double> labels;
};

LabelField sample_labels(const Graph& g, std::uint64_t seed);

} // namespace fiidlab
